#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rsc/ring.hpp"

namespace rsc {

// [[a, b], [c, d]]
struct Mat2 {
  Elem a = 0, b = 0, c = 0, d = 0;
  auto operator<=>(const Mat2&) const = default;
};

Mat2 mat_mul(const FiniteRing& r, const Mat2& x, const Mat2& y);
Elem mat_det(const FiniteRing& r, const Mat2& x);
// Inverse of a determinant-one matrix.
Mat2 mat_inv_sl2(const FiniteRing& r, const Mat2& x);
Mat2 mat_identity(const FiniteRing& r);
Mat2 mat_neg(const FiniteRing& r, const Mat2& x);
std::string render(const FiniteRing& r, const Mat2& x);

Mat2 elem_E(const FiniteRing& r, Elem x);    // [[x,1],[-1,0]]
Mat2 elem_E12(const FiniteRing& r, Elem x);  // [[1,x],[0,1]]
Mat2 elem_E21(const FiniteRing& r, Elem x);  // [[1,0],[x,1]]
Mat2 elem_D(const FiniteRing& r, Elem a);    // diag(a, a^-1); throws MathError for non-units
Mat2 elem_w(const FiniteRing& r);            // E(0)

// A matrix in SL_2 with first column (a, c), if (a, c) is unimodular.
std::optional<Mat2> complete_to_sl2(const FiniteRing& r, Elem a, Elem c);

// Finite group given by a multiplication table, optionally realized by 2x2 matrices.
class GroupTable {
 public:
  static constexpr int kTableLimit = 2048;

  // Elements are sorted lexicographically; the table is filled when the order is at most kTableLimit.
  static GroupTable from_matrices(const FiniteRing& r, std::vector<Mat2> elems, std::string name);
  static GroupTable cyclic(int m);
  // table[i * n + j] = index of g_i g_j; element 0 need not be the identity.
  static GroupTable from_table(int n, std::vector<int> table, std::string name);

  const std::string& name() const { return name_; }
  int order() const { return n_; }
  int identity() const { return id_; }
  int mul(int i, int j) const;
  int inv(int i) const { return inv_[i]; }
  bool has_table() const { return !table_.empty(); }

  bool is_matrix_group() const { return ring_ != nullptr; }
  const Mat2& matrix(int i) const { return mats_.at(i); }
  // Index of a matrix, or -1.
  int index_of(const Mat2& m) const;
  std::string render(int i) const;

 private:
  void finish();  // inverses, identity and group-axiom checks

  std::string name_;
  int n_ = 0;
  int id_ = 0;
  const FiniteRing* ring_ = nullptr;
  std::vector<Mat2> mats_;
  std::vector<std::uint64_t> keys_;  // sorted matrix keys, parallel to mats_
  std::vector<int> table_;
  std::vector<int> inv_;
};

// Position of each element of sub inside g; throws MathError if sub is not contained in g.
// Abstract groups embed only into a group with the same table.
std::vector<int> embedding(const GroupTable& sub, const GroupTable& g);

enum class GroupKind { SL2, E2, SM2, T, B };
GroupKind parse_group_kind(const std::string& s);
std::string to_string(GroupKind k);

constexpr long kDefaultGroupCap = 1000000;

GroupTable enumerate_group(const FiniteRing& r, GroupKind which, long cap = kDefaultGroupCap);
// |SL_2(A)| without listing it.
long sl2_order(const FiniteRing& r);
// Closure of the given matrices; throws CapExceeded past cap.
std::vector<Mat2> closure(const FiniteRing& r, const std::vector<Mat2>& gens, long cap = kDefaultGroupCap);
bool is_ge2_ring(const FiniteRing& r, long cap = kDefaultGroupCap);

// A subset of {E(x)} generating the same group, chosen greedily in element order.
std::vector<Mat2> minimal_e_generators(const FiniteRing& r, long cap = kDefaultGroupCap);

// Generators of SL_2: the greedy E(x) subset, extended by elements outside E_2 if needed.
std::vector<Mat2> sl2_generators(const FiniteRing& r, long cap = kDefaultGroupCap);

struct Ge2RelationReport {
  bool exhaustive = true;
  long checked[3] = {0, 0, 0};
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

// E(x)E(0)E(y) = D(-1)E(x+y), E(x)D(a) = D(a^-1)E(a^2 x), D(a)D(b) = D(ab).
Ge2RelationReport verify_ge2_relations(const FiniteRing& r, std::uint64_t seed = 1, long samples = 4000);

}  // namespace rsc
