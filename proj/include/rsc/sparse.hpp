#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rsc/abgrp.hpp"

namespace rsc {

using SparseVec = std::vector<std::pair<int, std::int64_t>>;  // sorted by row, no zeros

// Column-major sparse integer matrix with 64-bit entries.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(int rows) : rows_(rows) {}
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(cols_.size()); }
  std::size_t nonzeros() const;

  // Both sort, merge duplicates and drop zeros.
  int add_column(SparseVec col);
  void set_column(int c, SparseVec col);
  const SparseVec& column(int c) const { return cols_[c]; }

  SparseMatrix operator*(const SparseMatrix& right) const;
  bool is_zero() const;
  IntMatrix to_dense() const;
  static SparseMatrix from_dense(const IntMatrix& m);

 private:
  int rows_ = 0;
  std::vector<SparseVec> cols_;
};

SparseVec canonical_sparse(SparseVec v);
Vec dense_from_sparse(const SparseVec& v, int n);

// Invariant factors (nonzero ones, divisibility-sorted) and rank of a sparse matrix.
struct SparseInvariants {
  int rank = 0;
  std::vector<BigInt> nonunit;  // invariant factors > 1
};
SparseInvariants sparse_invariant_factors(const SparseMatrix& m);

// Persistent store for invariant factors, keyed by matrix content.
class InvariantCache {
 public:
  virtual ~InvariantCache() = default;
  virtual std::optional<SparseInvariants> get(const SparseMatrix& m) = 0;
  virtual void put(const SparseMatrix& m, const SparseInvariants& inv) = 0;
};

// sparse_invariant_factors, consulting the cache first when one is given.
SparseInvariants cached_invariant_factors(const SparseMatrix& m, InvariantCache* cache);

// Basis of the integer kernel as sparse columns.
std::vector<SparseVec> sparse_kernel(const SparseMatrix& m);

// ker(map) / span(relations) inside Z^ambient, with class projection and representatives.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(int ambient, const SparseMatrix& relations, const SparseMatrix& map);

  const FpAbelianGroup& group() const { return group_; }
  int ambient() const { return ambient_; }
  // Coordinates of a cycle in group() generators; throws MathError for non-cycles.
  Vec classify(const Vec& cycle) const;
  Vec classify(const SparseVec& cycle) const;
  // A cycle representing generator i of group().
  const Vec& representative(int i) const { return reps_.at(i); }
  bool is_cycle(const Vec& chain) const;

 private:
  Vec reduce(Vec v) const;  // project Z^ambient onto the non-pivot coordinates

  int ambient_ = 0;
  // pivots from unit elimination of the relations
  std::vector<int> piv_row_;
  std::vector<int> piv_unit_;
  std::vector<std::vector<std::pair<int, BigInt>>> piv_col_;
  std::vector<int> free_rows_;   // non-pivot rows
  std::vector<int> free_pos_;    // row -> index in free_rows_ or -1
  SparseMatrix map_;
  IntMatrix kernel_basis_;       // free coords x t
  Lattice kernel_lattice_{0, IntMatrix(0, 0)};
  IntMatrix U_;                  // SNF left transform of the relation presentation
  std::vector<BigInt> diag_;     // per kernel coordinate
  std::vector<int> kept_;        // kernel coordinates with diag != 1
  FpAbelianGroup group_;
  std::vector<Vec> reps_;
};

}  // namespace rsc
