#include "rsc/scissors.hpp"

#include <algorithm>
#include <sstream>

#include "rsc/errors.hpp"

namespace rsc {

namespace {

using Element = GModulePresentation::Element;

std::vector<std::string> symbol_names(const FiniteRing& r, const std::vector<Elem>& w) {
  std::vector<std::string> out;
  for (Elem x : w) out.push_back("[" + r.render(x) + "]");
  return out;
}

bool in_w(const std::vector<Elem>& w, Elem x) { return std::binary_search(w.begin(), w.end(), x); }

Vec vadd(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b.at(i);
  return a;
}

}  // namespace

int RpBar::symbol_of(Elem x) const {
  auto it = std::lower_bound(w.begin(), w.end(), x);
  if (it == w.end() || *it != x) throw MathError(g->ring().render(x) + " is not in W_A");
  return static_cast<int>(it - w.begin());
}

GModulePresentation::Element five_term_relation(const RpBar& rp, Elem x, Elem y) {
  const SquareClassGroup& g = *rp.g;
  const FiniteRing& r = g.ring();
  const Elem one = r.one();
  Elem xi = r.inv(x), yi = r.inv(y);
  Elem t1 = r.mul(y, xi);
  Elem t2 = r.mul(r.sub(one, xi), r.inv(r.sub(one, yi)));
  Elem t3 = r.mul(r.sub(one, x), r.inv(r.sub(one, y)));
  Element rel = rp.symbol(x) - rp.symbol(y);
  rel = rel + angle(g, x) * rp.symbol(t1);
  rel = rel - angle(g, r.sub(xi, one)) * rp.symbol(t2);
  rel = rel + angle(g, r.sub(one, x)) * rp.symbol(t3);
  return rel;
}

GroupRingElem lambda_bar_symbol(const SquareClassGroup& g, Elem x) {
  const FiniteRing& r = g.ring();
  return -(bracket(g, x) * bracket(g, r.sub(r.one(), x)));
}

GroupRingElem lambda_bar(const RpBar& rp, const Element& x) {
  GroupRingElem out(rp.g->order());
  for (std::size_t s = 0; s < rp.w.size(); ++s) out = out + x[s] * lambda_bar_symbol(*rp.g, rp.w[s]);
  return out;
}

RpBar rp_bar(const SquareClassGroup& g) {
  const FiniteRing& r = g.ring();
  std::vector<Elem> w = w_set(r);
  RpBar rp{&g, w, {}, GModulePresentation(g, symbol_names(r, w)), FpAbelianGroup(), AbMorphism(), {}};
  for (Elem x : w)
    for (Elem y : w)
      if (x != y && in_w(w, r.mul(x, r.inv(y)))) rp.pairs.emplace_back(x, y);
  for (auto [x, y] : rp.pairs) rp.pres.add_relation(five_term_relation(rp, x, y));
  rp.group = rp.pres.flatten();

  const int n = g.order();
  IntMatrix lam(n, rp.pres.flat_size());
  for (std::size_t s = 0; s < w.size(); ++s) {
    GroupRingElem base = lambda_bar_symbol(g, w[s]);
    for (int c = 0; c < n; ++c) {
      GroupRingElem v = GroupRingElem::basis(n, c) * base;
      for (int k = 0; k < n; ++k) lam(k, rp.pres.flat_index(static_cast<int>(s), c)) = v.coeff(k);
    }
  }
  FpAbelianGroup zg = group_ring_group(g);
  rp.lambda_ill_defined = ill_defined_relations(rp.group, zg, lam);
  if (!rp.lambda_ill_defined.empty()) throw MathError("lambda does not kill the five-term relations over " + r.name());
  rp.lambda = AbMorphism(rp.group, zg, lam);
  return rp;
}

Subgroup rp1_bar(const RpBar& rp) { return kernel(rp.lambda); }

bool in_rp1_bar(const RpBar& rp, const Element& x) { return lambda_bar(rp, x).is_zero(); }

GModulePresentation::Element psi1_bar(const RpBar& rp, Elem a) {
  const FiniteRing& r = rp.g->ring();
  return rp.symbol(a) + angle(*rp.g, r.minus_one()) * rp.symbol(r.inv(a));
}

GModulePresentation::Element g_elem(const RpBar& rp, Elem a) {
  const FiniteRing& r = rp.g->ring();
  return p_minus_one_plus(*rp.g) * rp.symbol(a) + bracket(*rp.g, r.sub(r.one(), a)) * psi1_bar(rp, a);
}

std::string relations_csv(const RpBar& rp) {
  std::ostringstream out;
  for (int i = 0; i < rp.pres.flat_size(); ++i) out << (i ? "," : "") << '"' << rp.pres.flat_name(i) << '"';
  out << '\n';
  IntMatrix rel = rp.pres.flattened_relations();
  for (int j = 0; j < rel.cols(); ++j) {
    for (int i = 0; i < rel.rows(); ++i) out << (i ? "," : "") << rel(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

WittData witt(const SquareClassGroup& g) {
  const FiniteRing& r = g.ring();
  const int n = g.order();
  std::vector<Vec> rel_cols, ideal_cols;
  for (Elem a : w_set(r)) {
    GroupRingElem base = bracket(g, a) * bracket(g, r.sub(r.one(), a));
    for (int t = 0; t < n; ++t) {
      GroupRingElem v = GroupRingElem::basis(n, t) * base;
      rel_cols.push_back(v.to_vec());
      ideal_cols.push_back(ideal_coords(v));
    }
  }
  WittData wd;
  wd.relations = IntMatrix::from_columns(n, rel_cols);
  wd.gw = FpAbelianGroup(n, wd.relations);
  IntMatrix aug(1, n);
  for (int c = 0; c < n; ++c) aug(0, c) = 1;
  wd.epsilon = AbMorphism(wd.gw, FpAbelianGroup::free(1), aug);

  wd.i = FpAbelianGroup(n - 1, IntMatrix::from_columns(n - 1, ideal_cols));
  wd.i_to_gw = AbMorphism(wd.i, wd.gw, augmentation_ideal(g).inclusion.matrix());
  Subgroup k = kernel(wd.epsilon);
  wd.i_is_kernel = k.group.isomorphic_to(wd.i) && is_injective(wd.i_to_gw) && is_exact_at(wd.i_to_gw, wd.epsilon);

  Subgroup sq = power_ideal_squared(g);
  wd.i_squared = generated_subgroup(wd.i, sq.inclusion.matrix());
  wd.i_mod_i2 = cokernel(wd.i_squared.inclusion);

  Quotient wq = quotient_by(wd.gw, IntMatrix::from_columns(n, {p_minus_one_plus(g).to_vec()}));
  wd.w = wq.group;
  wd.gw_to_w = wq.projection;
  return wd;
}

Vec ThetaMap::symbol_value(Elem a) const {
  const FiniteRing& r = unit_group->ring();
  Vec x = unit_group->coords(a), y = unit_group->coords(r.sub(r.one(), a));
  Vec s = sym.eval(x, y);
  for (auto& v : s) v = -v;
  return vadd(target.in1.apply(wedge.eval(x, y)), target.in2.apply(s));
}

ThetaMap theta_map(const RpBar& rp) {
  const UnitGroup& u = rp.g->units();
  FpAbelianGroup units = u.as_group();
  ThetaMap t{units, wedge_square(units), sym2_square(units), DirectSum{}, IntMatrix(), {}, &u};
  t.target = direct_sum(t.wedge.group(), t.sym.group());
  const int rows = t.target.group.num_generators();
  t.matrix = IntMatrix(rows, rp.pres.flat_size());
  for (std::size_t s = 0; s < rp.w.size(); ++s) {
    Vec v = t.symbol_value(rp.w[s]);
    for (int c = 0; c < rp.g->order(); ++c)
      for (int i = 0; i < rows; ++i) t.matrix(i, rp.pres.flat_index(static_cast<int>(s), c)) = v[i];
  }
  t.ill_defined = ill_defined_relations(rp.group, t.target.group, t.matrix);
  return t;
}

MilnorWittK1 k1mw(const SquareClassGroup& g, const WittData& wd) {
  const UnitGroup& u = g.units();
  MilnorWittK1 mw;
  mw.k1m = u.as_group();
  const FpAbelianGroup& q = wd.i_mod_i2.group;
  std::vector<Vec> cols;
  for (Elem gen : u.generators()) cols.push_back(ideal_coords(bracket(g, gen)));
  mw.from_units = AbMorphism(mw.k1m, q, IntMatrix::from_columns(q.num_generators(), cols));
  mw.from_i = wd.i_mod_i2.projection;
  mw.k = fiber_product(mw.from_units, mw.from_i);

  // K embedded in A* + I, for lifting pairs back into K
  DirectSum both = direct_sum(mw.k1m, wd.i);
  IntMatrix stacked = both.in1.matrix() * mw.k.pr1.matrix();
  IntMatrix second = both.in2.matrix() * mw.k.pr2.matrix();
  for (int i = 0; i < stacked.rows(); ++i)
    for (int j = 0; j < stacked.cols(); ++j) stacked(i, j) += second(i, j);
  AbMorphism k_in(mw.k.group, both.group, stacked);
  auto lift = [&](const Vec& x, const Vec& y) {
    auto v = preimage(k_in, vadd(both.in1.apply(x), both.in2.apply(y)));
    if (!v) throw MathError("pair does not lie in the fiber product");
    return *v;
  };

  const int nu = mw.k1m.num_generators();
  const int ni = wd.i.num_generators();
  std::vector<Vec> i2_cols;
  for (int j = 0; j < wd.i_squared.group.num_generators(); ++j)
    i2_cols.push_back(lift(zero_vec(nu), wd.i_squared.inclusion.matrix().column(j)));
  mw.i2_to_k = AbMorphism(wd.i_squared.group, mw.k.group, IntMatrix::from_columns(mw.k.group.num_generators(), i2_cols));
  mw.mw1_exact = is_injective(mw.i2_to_k) && is_exact_at(mw.i2_to_k, mw.k.pr1) && is_surjective(mw.k.pr1);

  IntMatrix two(nu, nu);
  for (int i = 0; i < nu; ++i) two(i, i) = 2;
  Subgroup twice = generated_subgroup(mw.k1m, two);
  std::vector<Vec> t_cols;
  for (int j = 0; j < twice.group.num_generators(); ++j)
    t_cols.push_back(lift(twice.inclusion.matrix().column(j), zero_vec(ni)));
  mw.twice_units_to_k = AbMorphism(twice.group, mw.k.group, IntMatrix::from_columns(mw.k.group.num_generators(), t_cols));
  mw.mw2_exact = is_injective(mw.twice_units_to_k) && is_exact_at(mw.twice_units_to_k, mw.k.pr2) && is_surjective(mw.k.pr2);
  return mw;
}

Subgroup mu2_subgroup(const UnitGroup& u) {
  FpAbelianGroup a = u.as_group();
  const int n = a.num_generators();
  IntMatrix two(n, n);
  for (int i = 0; i < n; ++i) two(i, i) = 2;
  return kernel(AbMorphism(a, a, two));
}

Z2Kernel z2_kernel(const SquareClassGroup& g) {
  const UnitGroup& u = g.units();
  FpAbelianGroup units = u.as_group();
  Subgroup mu = mu2_subgroup(u);
  FpAbelianGroup ga = g.as_group();
  BilinearGroup t = tensor(ga, mu.group);
  BilinearGroup w = wedge_square(units);
  const int na = ga.num_generators(), nm = mu.group.num_generators();
  IntMatrix m(w.group().num_generators(), t.group().num_generators());
  for (int i = 0; i < na; ++i) {
    Vec a = u.coords(g.representative(1 << i));
    Vec ei = zero_vec(na);
    ei[i] = 1;
    for (int j = 0; j < nm; ++j) {
      Vec ej = zero_vec(nm);
      ej[j] = 1;
      Vec pair = t.eval(ei, ej);
      int col = -1;
      for (int k = 0; k < static_cast<int>(pair.size()); ++k)
        if (pair[k] != 0) {
          if (col >= 0 || pair[k] != 1) throw MathError("tensor generators are not pure pairs");
          col = k;
        }
      if (col < 0) continue;
      Vec img = w.eval(a, mu.inclusion.matrix().column(j));
      for (int k = 0; k < m.rows(); ++k) m(k, col) = img[k];
    }
  }
  AbMorphism f(t.group(), w.group(), m);
  return {t.group(), f, kernel(f)};
}

}  // namespace rsc
