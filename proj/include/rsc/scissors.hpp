#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsc/grpring.hpp"

namespace rsc {

// Refined scissors congruence group on symbols [x], x in W_A, modulo the refined five-term relations.
struct RpBar {
  const SquareClassGroup* g = nullptr;
  std::vector<Elem> w;                       // W_A; symbol s stands for [w[s]]
  std::vector<std::pair<Elem, Elem>> pairs;  // (x, y) with x, y, x/y in W_A, x != y
  GModulePresentation pres;
  FpAbelianGroup group;                      // flattened
  AbMorphism lambda;                         // into Z[G_A]
  std::vector<int> lambda_ill_defined;       // relation columns lambda fails to kill

  int symbol_of(Elem x) const;  // throws MathError when x is not in W_A
  GModulePresentation::Element symbol(Elem x) const { return pres.symbol(symbol_of(x)); }
};

RpBar rp_bar(const SquareClassGroup& g);

// The relation attached to the pair (x, y).
GModulePresentation::Element five_term_relation(const RpBar& rp, Elem x, Elem y);
// -<<x>><<1-x>>
GroupRingElem lambda_bar_symbol(const SquareClassGroup& g, Elem x);
GroupRingElem lambda_bar(const RpBar& rp, const GModulePresentation::Element& x);

// Kernel of lambda inside RP-bar.
Subgroup rp1_bar(const RpBar& rp);
bool in_rp1_bar(const RpBar& rp, const GModulePresentation::Element& x);

// [a] + <-1>[a^-1]
GModulePresentation::Element psi1_bar(const RpBar& rp, Elem a);
// p_{-1}^+ [a] + <<1-a>> psi1_bar(a)
GModulePresentation::Element g_elem(const RpBar& rp, Elem a);

// One CSV row per flattened relation; columns are the flattened generators.
std::string relations_csv(const RpBar& rp);

struct WittData {
  IntMatrix relations;    // <<a>><<1-a>> translates, in Z[G_A] coordinates
  FpAbelianGroup gw;      // Z[G_A] / relations
  AbMorphism epsilon;     // gw -> Z
  FpAbelianGroup i;       // I_A / relations, on the <<g>> basis
  AbMorphism i_to_gw;
  Subgroup i_squared;     // image of I_A^2 in i
  Quotient i_mod_i2;      // i / i_squared
  FpAbelianGroup w;       // gw / Z (<-1> + 1)
  AbMorphism gw_to_w;
  bool i_is_kernel = false;  // i agrees with ker(epsilon)
};

WittData witt(const SquareClassGroup& g);

// [x] -> (x ^ (1-x), -x . (1-x)) into Lambda^2(A*) + S^2(A*), with G_A acting trivially.
struct ThetaMap {
  FpAbelianGroup units;
  BilinearGroup wedge;
  BilinearGroup sym;
  DirectSum target;
  IntMatrix matrix;                // flattened RP-bar generators -> target generators
  std::vector<int> ill_defined;    // relation columns not killed
  bool well_defined() const { return ill_defined.empty(); }
  Vec apply(const Vec& flat) const { return matrix * flat; }
  // (a ^ (1-a), -a . (1-a)) in target coordinates
  Vec symbol_value(Elem a) const;

  const UnitGroup* unit_group = nullptr;
};

ThetaMap theta_map(const RpBar& rp);

// Milnor-Witt K_1 as the fiber product of A* -> I/I^2 and I -> I/I^2, with K_1^M taken to be A*.
struct MilnorWittK1 {
  FpAbelianGroup k1m;
  AbMorphism from_units;  // A* -> I/I^2, a -> <<a>>
  AbMorphism from_i;      // I -> I/I^2
  FiberProduct k;
  // 0 -> I^2 -> K -> A* -> 0
  AbMorphism i2_to_k;
  bool mw1_exact = false;
  // 0 -> 2A* -> K -> I -> 0
  AbMorphism twice_units_to_k;
  bool mw2_exact = false;
};

MilnorWittK1 k1mw(const SquareClassGroup& g, const WittData& wd);

// Kernel of G_A (x) mu_2 -> Lambda^2(A*), <a> (x) b -> a ^ b.
struct Z2Kernel {
  FpAbelianGroup source;
  AbMorphism map;
  Subgroup kernel;
  BigInt order() const { return *kernel.group.order(); }
};

Z2Kernel z2_kernel(const SquareClassGroup& g);

// mu_2(A) as a subgroup of the presented unit group.
Subgroup mu2_subgroup(const UnitGroup& u);

}  // namespace rsc
