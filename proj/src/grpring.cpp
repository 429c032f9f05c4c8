#include "rsc/grpring.hpp"

#include "rsc/errors.hpp"

namespace rsc {

SquareClassGroup::SquareClassGroup(const UnitGroup& units) : units_(&units) {
  for (std::size_t i = 0; i < units.orders().size(); ++i)
    if (units.orders()[i] % 2 == 0) even_.push_back(static_cast<int>(i));
  dim_ = static_cast<int>(even_.size());
  reps_.assign(order(), -1);
  for (Elem u : units.units()) {
    int c = class_of(u);
    if (reps_[c] < 0) reps_[c] = u;
  }
}

int SquareClassGroup::class_of(Elem u) const {
  auto e = units_->dlog(u);
  int c = 0;
  for (int k = 0; k < dim_; ++k)
    if (e[even_[k]] % 2 != 0) c |= 1 << k;
  return c;
}

std::string SquareClassGroup::name(int cls) const { return "⟨" + ring().render(representative(cls)) + "⟩"; }

FpAbelianGroup SquareClassGroup::as_group() const {
  return FpAbelianGroup::from_invariants(0, std::vector<BigInt>(dim_, BigInt(2)));
}

GroupRingElem GroupRingElem::basis(int n, int cls) {
  GroupRingElem x(n);
  x.c_.at(cls) = 1;
  return x;
}

GroupRingElem GroupRingElem::scalar(int n, long v) {
  GroupRingElem x(n);
  x.c_[0] = v;
  return x;
}

long GroupRingElem::augmentation() const {
  long s = 0;
  for (long v : c_) s += v;
  return s;
}

bool GroupRingElem::is_zero() const {
  for (long v : c_)
    if (v != 0) return false;
  return true;
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  if (o.group_order() != group_order()) throw UsageError("group ring size mismatch");
  GroupRingElem r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const { return *this + (-o); }

GroupRingElem GroupRingElem::operator-() const { return *this * -1; }

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  if (o.group_order() != group_order()) throw UsageError("group ring size mismatch");
  GroupRingElem r(group_order());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < c_.size(); ++j)
      if (o.c_[j] != 0) r.c_[i ^ j] += c_[i] * o.c_[j];
  }
  return r;
}

GroupRingElem GroupRingElem::operator*(long k) const {
  GroupRingElem r = *this;
  for (auto& v : r.c_) v *= k;
  return r;
}

Vec GroupRingElem::to_vec() const { return Vec(c_.begin(), c_.end()); }

std::string GroupRingElem::render(const SquareClassGroup& g) const {
  std::string s;
  for (int i = group_order() - 1; i >= 0; --i) {
    long v = c_[i];
    if (v == 0) continue;
    if (s.empty())
      s += v < 0 ? "−" : "";
    else
      s += v < 0 ? " − " : " + ";
    s += std::to_string(v < 0 ? -v : v) + "·" + g.name(i);
  }
  return s.empty() ? "0" : s;
}

GroupRingElem angle(const SquareClassGroup& g, Elem a) {
  if (!g.ring().is_unit(a)) throw MathError(g.ring().render(a) + " is not a unit");
  return GroupRingElem::basis(g.order(), g.class_of(a));
}

GroupRingElem bracket(const SquareClassGroup& g, Elem a) {
  return angle(g, a) - GroupRingElem::scalar(g.order(), 1);
}

GroupRingElem p_minus_one_plus(const SquareClassGroup& g) {
  return angle(g, g.ring().minus_one()) + GroupRingElem::scalar(g.order(), 1);
}

FpAbelianGroup group_ring_group(const SquareClassGroup& g) { return FpAbelianGroup::free(g.order()); }

Subgroup augmentation_ideal(const SquareClassGroup& g) {
  const int n = g.order();
  IntMatrix inc(n, n - 1);
  for (int c = 1; c < n; ++c) {
    inc(c, c - 1) = 1;
    inc(0, c - 1) = -1;
  }
  FpAbelianGroup ia = FpAbelianGroup::free(n - 1);
  return {ia, AbMorphism(ia, group_ring_group(g), inc)};
}

Vec ideal_coords(const GroupRingElem& x) {
  if (x.augmentation() != 0) throw MathError("element is not in the augmentation ideal");
  Vec v;
  for (int c = 1; c < x.group_order(); ++c) v.emplace_back(x.coeff(c));
  return v;
}

Subgroup power_ideal_squared(const SquareClassGroup& g) {
  const int n = g.order();
  std::vector<Vec> prods;
  for (int a = 1; a < n; ++a)
    for (int b = a; b < n; ++b) {
      GroupRingElem x = GroupRingElem::basis(n, a) - GroupRingElem::scalar(n, 1);
      GroupRingElem y = GroupRingElem::basis(n, b) - GroupRingElem::scalar(n, 1);
      prods.push_back(ideal_coords(x * y));
    }
  FpAbelianGroup ia = FpAbelianGroup::free(n - 1);
  return generated_subgroup(ia, IntMatrix::from_columns(n - 1, prods));
}

GModulePresentation::GModulePresentation(const SquareClassGroup& g, std::vector<std::string> symbols)
    : g_(&g), order_(g.order()), symbols_(std::move(symbols)) {}

std::string GModulePresentation::flat_name(int index) const {
  int s = index / order_, c = index % order_;
  return g_->name(c) + symbols_.at(s);
}

GModulePresentation::Element GModulePresentation::zero() const {
  return Element(num_symbols(), GroupRingElem(order_));
}

GModulePresentation::Element GModulePresentation::symbol(int s) const {
  Element x = zero();
  x.at(s) = GroupRingElem::scalar(order_, 1);
  return x;
}

Vec GModulePresentation::flatten(const Element& x) const {
  if (static_cast<int>(x.size()) != num_symbols()) throw UsageError("module element has wrong symbol count");
  Vec v = zero_vec(flat_size());
  for (int s = 0; s < num_symbols(); ++s)
    for (int c = 0; c < order_; ++c) v[flat_index(s, c)] = x[s].coeff(c);
  return v;
}

IntMatrix GModulePresentation::flattened_relations() const {
  std::vector<Vec> cols;
  for (const auto& r : relations_)
    for (int t = 0; t < order_; ++t) cols.push_back(flatten(GroupRingElem::basis(order_, t) * r));
  return IntMatrix::from_columns(flat_size(), cols);
}

FpAbelianGroup GModulePresentation::flatten() const { return FpAbelianGroup(flat_size(), flattened_relations()); }

GModulePresentation::Element operator*(const GroupRingElem& a, const GModulePresentation::Element& x) {
  GModulePresentation::Element r = x;
  for (auto& c : r) c = a * c;
  return r;
}

GModulePresentation::Element operator+(const GModulePresentation::Element& x,
                                       const GModulePresentation::Element& y) {
  GModulePresentation::Element r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] + y.at(i);
  return r;
}

GModulePresentation::Element operator-(const GModulePresentation::Element& x,
                                       const GModulePresentation::Element& y) {
  GModulePresentation::Element r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] - y.at(i);
  return r;
}

}  // namespace rsc
