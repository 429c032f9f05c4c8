#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsc/matrix.hpp"

namespace rsc {

// Abelian group Z^g / (column span of the relation matrix).
class FpAbelianGroup {
 public:
  FpAbelianGroup() : FpAbelianGroup(0, IntMatrix(0, 0)) {}
  FpAbelianGroup(int generators, IntMatrix relations);

  static FpAbelianGroup free(int rank);
  static FpAbelianGroup cyclic(const BigInt& n);
  static FpAbelianGroup from_invariants(int free_rank, const std::vector<BigInt>& torsion);

  int num_generators() const { return gens_; }
  const IntMatrix& relations() const { return rel_; }

  int free_rank() const { return free_rank_; }
  const std::vector<BigInt>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  std::optional<BigInt> order() const;

  // Canonical coordinates: equal iff the elements are equal.
  Vec normal_form(const Vec& x) const;
  bool is_zero(const Vec& x) const;
  bool equal(const Vec& x, const Vec& y) const;
  std::optional<BigInt> element_order(const Vec& x) const;
  Vec generator(int i) const;

  // Invariant-factor coordinates (one per nontrivial cyclic summand) and back.
  std::vector<BigInt> summand_orders() const;  // 0 marks a free summand
  Vec to_summands(const Vec& x) const;
  Vec from_summands(const Vec& c) const;

  bool isomorphic_to(const FpAbelianGroup& other) const;
  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  int gens_;
  IntMatrix rel_;
  IntMatrix U_, Uinv_;
  std::vector<BigInt> diag_;  // per generator row after SNF; 0 = free
  int free_rank_ = 0;
  std::vector<BigInt> torsion_;
};

std::string render_invariants(int free_rank, const std::vector<BigInt>& torsion);

class AbMorphism {
 public:
  AbMorphism() = default;
  // Throws MathError unless matrix maps source relations into target relations.
  AbMorphism(FpAbelianGroup source, FpAbelianGroup target, IntMatrix matrix);

  static AbMorphism identity(const FpAbelianGroup& g);
  static AbMorphism zero(const FpAbelianGroup& s, const FpAbelianGroup& t);

  const FpAbelianGroup& source() const { return src_; }
  const FpAbelianGroup& target() const { return tgt_; }
  const IntMatrix& matrix() const { return mat_; }

  Vec apply(const Vec& x) const;
  AbMorphism then(const AbMorphism& after) const;  // after ∘ this
  bool is_zero() const;

 private:
  FpAbelianGroup src_, tgt_;
  IntMatrix mat_;
};

// Indices of source relation columns that the matrix fails to kill.
std::vector<int> ill_defined_relations(const FpAbelianGroup& source, const FpAbelianGroup& target,
                                       const IntMatrix& matrix);

struct Subgroup {
  FpAbelianGroup group;
  AbMorphism inclusion;  // into the ambient group
};

struct Quotient {
  FpAbelianGroup group;
  AbMorphism projection;  // from the ambient group
};

Subgroup kernel(const AbMorphism& f);
Subgroup image(const AbMorphism& f);
Quotient cokernel(const AbMorphism& f);
// Subgroup generated by the given elements (columns in generator coordinates).
Subgroup generated_subgroup(const FpAbelianGroup& g, const IntMatrix& elements);
Quotient quotient_by(const FpAbelianGroup& g, const IntMatrix& elements);

bool is_injective(const AbMorphism& f);
bool is_surjective(const AbMorphism& f);
bool is_isomorphism(const AbMorphism& f);
bool is_exact_at(const AbMorphism& f, const AbMorphism& g);
// Some x with f(x) = y in the target group, if one exists.
std::optional<Vec> preimage(const AbMorphism& f, const Vec& y);

struct DirectSum {
  FpAbelianGroup group;
  AbMorphism in1, in2, pr1, pr2;
};
DirectSum direct_sum(const FpAbelianGroup& a, const FpAbelianGroup& b);

struct FiberProduct {
  FpAbelianGroup group;
  AbMorphism pr1, pr2;
};
FiberProduct fiber_product(const AbMorphism& f, const AbMorphism& h);

// Bilinear constructions on generator pairs with evaluation maps.
class BilinearGroup {
 public:
  enum class Kind { Tensor, Wedge, Sym2 };
  BilinearGroup(Kind kind, const FpAbelianGroup& a, const FpAbelianGroup& b);

  const FpAbelianGroup& group() const { return group_; }
  Vec eval(const Vec& x, const Vec& y) const;

 private:
  void add_pair(Vec& out, int i, int j, const BigInt& c) const;
  Kind kind_;
  int ga_, gb_;
  FpAbelianGroup group_;
};

BilinearGroup tensor(const FpAbelianGroup& a, const FpAbelianGroup& b);
BilinearGroup wedge_square(const FpAbelianGroup& a);
// S^2_Z(G) = G (x) G / <a (x) b + b (x) a>.
BilinearGroup sym2_square(const FpAbelianGroup& a);

}  // namespace rsc
