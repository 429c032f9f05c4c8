#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rsc/abgrp.hpp"

namespace rsc {

using Elem = std::int32_t;

enum class RingKind { Zmod, Gf, Prod };

struct RingSpec {
  RingKind kind = RingKind::Zmod;
  int modulus = 0;                // n for zmod, q for gf
  std::vector<RingSpec> factors;  // prod only
  std::string to_string() const;
};

RingSpec parse_ring_spec(std::string_view text);

// Finite commutative ring with elements encoded as 0..size()-1.
class FiniteRing {
 public:
  explicit FiniteRing(const RingSpec& spec);
  explicit FiniteRing(std::string_view spec) : FiniteRing(parse_ring_spec(spec)) {}

  const RingSpec& spec() const { return spec_; }
  std::string name() const { return spec_.to_string(); }
  int size() const { return n_; }
  Elem zero() const { return 0; }
  Elem one() const { return one_; }
  Elem minus_one() const { return neg_[one_]; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, long e) const;
  bool is_unit(Elem a) const { return inv_[a] >= 0; }
  Elem inv(Elem a) const;  // throws MathError on non-units
  Elem from_int(long v) const;

  std::string render(Elem a) const;
  // Element whose rendering is text; throws UsageError if none.
  Elem parse_element(std::string_view text) const;

  int characteristic() const { return char_; }
  bool is_field() const;
  bool is_local() const;

  const std::vector<Elem>& units() const { return units_; }
  const std::vector<FiniteRing>& factors() const { return factors_; }
  const std::vector<int>& gf_modulus() const { return poly_; }  // low degree first, monic

  // Additive group: a basis with orders and coordinates of elements.
  const std::vector<Elem>& additive_basis() const { return add_basis_; }
  const std::vector<long>& additive_orders() const { return add_orders_; }
  std::vector<long> additive_coords(Elem a) const;

  // Product rings: component access (first factor most significant).
  std::vector<Elem> components(Elem a) const;
  Elem from_components(const std::vector<Elem>& c) const;

 private:
  Elem add_formula(Elem a, Elem b) const;
  Elem mul_formula(Elem a, Elem b) const;

  RingSpec spec_;
  int n_ = 0;
  int p_ = 0, d_ = 1;     // gf
  int char_ = 0;
  Elem one_ = 1;
  std::vector<int> poly_;
  std::vector<FiniteRing> factors_;
  std::vector<int> strides_;
  std::vector<std::uint16_t> add_tab_, mul_tab_;
  std::vector<Elem> neg_, inv_, units_;
  std::vector<Elem> add_basis_;
  std::vector<long> add_orders_;
};

// Unit group A* as a product of cyclic groups with discrete logarithms.
class UnitGroup {
 public:
  explicit UnitGroup(const FiniteRing& ring);

  const FiniteRing& ring() const { return *ring_; }
  const std::vector<Elem>& units() const { return ring_->units(); }
  int order() const { return static_cast<int>(units().size()); }
  const std::vector<Elem>& generators() const { return gens_; }
  const std::vector<long>& orders() const { return orders_; }  // invariant factors
  std::vector<long> dlog(Elem u) const;
  Elem exp(const std::vector<long>& e) const;
  // A* as a presented group on generators() with relations orders().
  FpAbelianGroup as_group() const;
  Vec coords(Elem u) const;

 private:
  const FiniteRing* ring_;
  std::vector<Elem> gens_;
  std::vector<long> orders_;
  std::vector<int> dlog_index_;        // element -> row in dlog_, -1 for non-units
  std::vector<std::vector<long>> dlog_;
};

UnitGroup unit_group(const FiniteRing& ring);
std::vector<Elem> mu2(const FiniteRing& ring);
std::vector<Elem> w_set(const FiniteRing& ring);
// A / <(a^2 - 1) b : a unit, b in A>.
FpAbelianGroup h0_units_on_A(const FiniteRing& ring);

}  // namespace rsc
