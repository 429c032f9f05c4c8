#pragma once

#include <string>
#include <vector>

#include "rsc/ring.hpp"

namespace rsc {

// G_A = A*/(A*)^2 as an F_2-vector space; class i is a bitmask, identity is 0.
class SquareClassGroup {
 public:
  explicit SquareClassGroup(const UnitGroup& units);

  int order() const { return 1 << dim_; }
  int dimension() const { return dim_; }
  int class_of(Elem u) const;
  Elem representative(int cls) const { return reps_.at(cls); }  // least unit in the class
  std::string name(int cls) const;  // "⟨a⟩" with a the least representative
  const UnitGroup& units() const { return *units_; }
  const FiniteRing& ring() const { return units_->ring(); }
  // G_A as a presented group (Z/2)^dim on the basis classes 1, 2, 4, ...
  FpAbelianGroup as_group() const;

 private:
  const UnitGroup* units_;
  int dim_ = 0;
  std::vector<int> even_;  // unit-group generator indices of even order
  std::vector<Elem> reps_;
};

// Element of Z[G_A].
class GroupRingElem {
 public:
  explicit GroupRingElem(int group_order = 1) : c_(group_order, 0) {}

  static GroupRingElem basis(int group_order, int cls);
  static GroupRingElem scalar(int group_order, long v);

  int group_order() const { return static_cast<int>(c_.size()); }
  long coeff(int cls) const { return c_.at(cls); }
  long& coeff(int cls) { return c_.at(cls); }
  long augmentation() const;
  bool is_zero() const;

  GroupRingElem operator+(const GroupRingElem& o) const;
  GroupRingElem operator-(const GroupRingElem& o) const;
  GroupRingElem operator-() const;
  GroupRingElem operator*(const GroupRingElem& o) const;
  GroupRingElem operator*(long k) const;
  bool operator==(const GroupRingElem& o) const = default;

  Vec to_vec() const;
  std::string render(const SquareClassGroup& g) const;

 private:
  std::vector<long> c_;
};

// <a>
GroupRingElem angle(const SquareClassGroup& g, Elem a);
// <<a>> = <a> - 1
GroupRingElem bracket(const SquareClassGroup& g, Elem a);
// p_{-1}^+ = <-1> + 1
GroupRingElem p_minus_one_plus(const SquareClassGroup& g);

// Free abelian group Z[G_A] of rank |G_A|.
FpAbelianGroup group_ring_group(const SquareClassGroup& g);
// I_A with basis <<g>> (g != 1) and its inclusion into Z[G_A].
Subgroup augmentation_ideal(const SquareClassGroup& g);
// Coordinates of an augmentation-zero element in the <<g>> basis.
Vec ideal_coords(const GroupRingElem& x);
// I_A^2 inside I_A, spanned by pairwise products.
Subgroup power_ideal_squared(const SquareClassGroup& g);

// Z[G_A]-module on named symbols, flattened to Z with generator (symbol s, class c) at s*|G| + c.
class GModulePresentation {
 public:
  using Element = std::vector<GroupRingElem>;  // one coefficient per symbol

  GModulePresentation(const SquareClassGroup& g, std::vector<std::string> symbols);

  int num_symbols() const { return static_cast<int>(symbols_.size()); }
  int group_order() const { return order_; }
  int flat_size() const { return order_ * num_symbols(); }
  int flat_index(int symbol, int cls) const { return symbol * order_ + cls; }
  std::string flat_name(int index) const;

  Element zero() const;
  Element symbol(int s) const;
  void add_relation(const Element& r) { relations_.push_back(r); }
  const std::vector<Element>& relations() const { return relations_; }

  Vec flatten(const Element& x) const;
  // Relations translated by every element of G_A.
  IntMatrix flattened_relations() const;
  FpAbelianGroup flatten() const;

 private:
  const SquareClassGroup* g_;
  int order_;
  std::vector<std::string> symbols_;
  std::vector<Element> relations_;
};

GModulePresentation::Element operator*(const GroupRingElem& a, const GModulePresentation::Element& x);
GModulePresentation::Element operator+(const GModulePresentation::Element& x,
                                       const GModulePresentation::Element& y);
GModulePresentation::Element operator-(const GModulePresentation::Element& x,
                                       const GModulePresentation::Element& y);

}  // namespace rsc
