#pragma once

#include <initializer_list>
#include <tuple>
#include <vector>

#include "rsc/bigint.hpp"

namespace rsc {

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_columns(int rows, const std::vector<Vec>& cols);
  static IntMatrix from_triplets(int rows, int cols,
                                 const std::vector<std::tuple<int, int, BigInt>>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const BigInt& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  Vec column(int c) const;
  Vec row(int r) const;
  std::vector<std::tuple<int, int, BigInt>> triplets() const;

  IntMatrix operator*(const IntMatrix& other) const;
  Vec operator*(const Vec& v) const;
  bool operator==(const IntMatrix& other) const = default;

  IntMatrix transposed() const;
  IntMatrix hcat(const IntMatrix& right) const;
  IntMatrix columns(int begin, int end) const;
  IntMatrix select_columns(const std::vector<int>& which) const;
  void append_columns(const IntMatrix& right) { *this = hcat(right); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

struct SmithOptions {
  bool left = false;   // compute U and U^-1
  bool right = false;  // compute V and V^-1
};

// U * M * V = diag(diagonal), diagonal sorted by divisibility, zeros last.
struct SmithForm {
  std::vector<BigInt> diagonal;  // length min(rows, cols)
  int rank = 0;
  IntMatrix U, Uinv, V, Vinv;

  // Diagonal entries with zero padding up to n, handy for groups on n generators.
  std::vector<BigInt> padded(int n) const;
};

SmithForm smith_normal_form(const IntMatrix& m, SmithOptions opts = {});

// Basis of {x : M x = 0} as columns.
IntMatrix integer_kernel(const IntMatrix& m);

// Sublattice of Z^dim spanned by generator columns.
class Lattice {
 public:
  Lattice(int dim, const IntMatrix& generators);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(d_.size()); }
  const IntMatrix& basis() const { return basis_; }
  bool contains(const Vec& x) const;
  // Coordinates of x with respect to basis(), or empty optional-like flag.
  bool coordinates(const Vec& x, Vec& out) const;

 private:
  int dim_;
  IntMatrix U_;
  std::vector<BigInt> d_;
  IntMatrix basis_;
};

// Incremental echelon basis of a sublattice of Z^n; keeps entries exact.
class Echelon {
 public:
  explicit Echelon(int n) : n_(n), by_pivot_(n, -1) {}
  void insert(Vec v);
  int rank() const { return static_cast<int>(rows_.size()); }
  IntMatrix basis() const;  // n x rank

 private:
  int n_;
  std::vector<int> by_pivot_;
  std::vector<Vec> rows_;
};

}  // namespace rsc
