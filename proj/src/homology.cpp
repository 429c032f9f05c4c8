#include "rsc/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rsc/errors.hpp"
#include "rsc/grpring.hpp"
#include "rsc/scissors.hpp"

namespace rsc {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::SkippedHypothesis: return "skipped:hypothesis";
    case Status::Reported: return "reported";
  }
  return "?";
}

bool any_failed(const std::vector<Check>& checks) {
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == Status::Fail; });
}

PermModule PermModule::trivial(const GroupTable& g) {
  PermModule m;
  m.size = 1;
  m.action.assign(g.order(), std::vector<int>{0});
  return m;
}

PermModule PermModule::cosets(const GroupTable& g, const std::vector<int>& sub) {
  // coset xH labelled by its least element
  std::vector<int> least(g.order(), -1);
  for (int x = 0; x < g.order(); ++x) {
    int m = x;
    for (int h : sub) m = std::min(m, g.mul(x, h));
    least[x] = m;
  }
  std::map<int, int> id;
  for (int x = 0; x < g.order(); ++x) id.emplace(least[x], 0);
  std::vector<int> rep;
  for (auto& [l, i] : id) {
    i = static_cast<int>(rep.size());
    rep.push_back(l);
  }
  if (rep.size() * sub.size() != static_cast<std::size_t>(g.order())) throw MathError("not a subgroup: cosets have unequal sizes");
  PermModule m;
  m.size = static_cast<int>(rep.size());
  m.action.assign(g.order(), std::vector<int>(m.size));
  for (int x = 0; x < g.order(); ++x)
    for (int c = 0; c < m.size; ++c) m.action[x][c] = id.at(least[g.mul(x, rep[c])]);
  return m;
}

void PermModule::check(const GroupTable& g) const {
  if (static_cast<int>(action.size()) != g.order()) throw MathError("module action has the wrong number of elements");
  for (int x = 0; x < size; ++x)
    if (action[g.identity()][x] != x) throw MathError("identity does not act trivially on the module");
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      for (int x = 0; x < size; ++x)
        if (action[g.mul(a, b)][x] != action[a][action[b][x]]) throw MathError("module action is not a left action");
}

void check_homology_caps(int order, int n, const HomologyOptions& caps) {
  if (n < 0 || n > 3) throw UsageError("homology degree must be between 0 and 3");
  if (caps.override) return;
  if (n == 3 && order > caps.h3_order)
    throw CapExceeded("H_3 needs |G| <= " + std::to_string(caps.h3_order) + ", got " + std::to_string(order));
  if (n == 2 && order > caps.h2_order)
    throw CapExceeded("H_2 needs |G| <= " + std::to_string(caps.h2_order) + ", got " + std::to_string(order));
}

BarComplex::BarComplex(const GroupTable& g, int top, PermModule m, long cap)
    : g_(&g), m_(std::move(m)), top_(top), k_(g.order() - 1) {
  if (top < 0) throw UsageError("bar complex degree must be nonnegative");
  if (static_cast<long>(g.order()) * g.order() * m_.size <= 20000000) m_.check(g);
  pos_.assign(g.order(), -1);
  for (int e = 0; e < g.order(); ++e)
    if (e != g.identity()) {
      pos_[e] = static_cast<int>(elem_.size());
      elem_.push_back(e);
    }
  for (int n = 0; n <= top; ++n)
    if (rank(n) > cap)
      throw CapExceeded("bar complex of " + g.name() + " has " + std::to_string(rank(n)) + " cells in degree " +
                        std::to_string(n));

  d_.reserve(top + 1);
  d_.emplace_back(0, static_cast<int>(rank(0)));
  std::vector<int> face;
  for (int n = 1; n <= top; ++n) {
    SparseMatrix d(static_cast<int>(rank(n - 1)));
    for (long j = 0; j < rank(n); ++j) {
      auto [t, x] = cell(n, j);
      SparseVec col;
      face.assign(t.begin() + 1, t.end());
      col.emplace_back(static_cast<int>(index_of(face, m_.action[g.inv(t[0])][x])), 1);
      for (int i = 1; i < n; ++i) {
        int p = g.mul(t[i - 1], t[i]);
        if (p == g.identity()) continue;
        face.assign(t.begin(), t.end());
        face[i - 1] = p;
        face.erase(face.begin() + i);
        col.emplace_back(static_cast<int>(index_of(face, x)), i % 2 ? -1 : 1);
      }
      face.assign(t.begin(), t.end() - 1);
      col.emplace_back(static_cast<int>(index_of(face, x)), n % 2 ? -1 : 1);
      d.add_column(std::move(col));
    }
    d_.push_back(std::move(d));
  }
}

long BarComplex::rank(int n) const {
  long r = m_.size;
  for (int i = 0; i < n; ++i) {
    if (r > (1L << 40) / std::max<long>(k_, 1)) return 1L << 40;
    r *= k_;
  }
  return r;
}

long BarComplex::index_of(const std::vector<int>& elems, int x) const {
  long idx = 0;
  for (int e : elems) {
    int p = pos_.at(e);
    if (p < 0) return -1;
    idx = idx * k_ + p;
  }
  return idx * m_.size + x;
}

std::pair<std::vector<int>, int> BarComplex::cell(int n, long idx) const {
  int x = static_cast<int>(idx % m_.size);
  idx /= m_.size;
  std::vector<int> t(n);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = elem_[idx % k_];
    idx /= k_;
  }
  return {t, x};
}

bool BarComplex::boundaries_compose_to_zero() const {
  for (int n = 2; n <= top_; ++n)
    if (!(d_[n - 1] * d_[n]).is_zero()) return false;
  return true;
}

FpAbelianGroup homology_from_boundaries(long rank_n, const SparseMatrix& d_n, const SparseMatrix& d_n1,
                                        InvariantCache* cache) {
  SparseInvariants a = cached_invariant_factors(d_n, cache), b = cached_invariant_factors(d_n1, cache);
  return FpAbelianGroup::from_invariants(static_cast<int>(rank_n - a.rank - b.rank), b.nonunit);
}

GroupHomology::GroupHomology(const GroupTable& g, int top, const PermModule& m, const HomologyOptions& caps) {
  check_homology_caps(g.order(), top, caps);
  c_ = BarComplex(g, top + 1, m);
  for (int n = 0; n <= top; ++n)
    h_.emplace_back(static_cast<int>(c_.rank(n)), c_.boundary(n + 1), c_.boundary(n));
}

FpAbelianGroup group_homology(const GroupTable& g, int n, const HomologyOptions& caps) {
  return group_homology(g, n, PermModule::trivial(g), caps);
}

FpAbelianGroup group_homology(const GroupTable& g, int n, const PermModule& m, const HomologyOptions& caps) {
  check_homology_caps(g.order(), n, caps);
  BarComplex c(g, n + 1, m);
  return homology_from_boundaries(c.rank(n), c.boundary(n), c.boundary(n + 1), caps.cache);
}

bool LesReport::all_exact() const {
  return std::all_of(positions.begin(), positions.end(), [](const LesPosition& p) { return p.exact; });
}

namespace {

PermModule restrict_module(const GroupTable& g, const GroupTable& sub, const PermModule& m,
                           const std::vector<int>& points) {
  std::vector<int> emb = embedding(sub, g);
  std::vector<int> where(m.size, -1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < 0 || points[i] >= m.size) throw UsageError("submodule point out of range");
    where[points[i]] = static_cast<int>(i);
  }
  PermModule out;
  out.size = static_cast<int>(points.size());
  out.action.assign(sub.order(), std::vector<int>(out.size));
  for (int h = 0; h < sub.order(); ++h)
    for (int i = 0; i < out.size; ++i) {
      int y = where[m.action[emb[h]][points[i]]];
      if (y < 0) throw MathError("submodule is not stable under " + sub.name());
      out.action[h][i] = y;
    }
  return out;
}

Vec apply_sparse(const SparseMatrix& d, const Vec& v) {
  Vec out = zero_vec(d.rows());
  for (int j = 0; j < d.cols(); ++j) {
    if (sgn(v[j]) == 0) continue;
    for (auto [i, c] : d.column(j)) out[i] += v[j] * c;
  }
  return out;
}

}  // namespace

PairComplex::PairComplex(const GroupTable& g, const GroupTable& sub, int top, const HomologyOptions& caps)
    : PairComplex(g, sub, top, PermModule::trivial(g), {0}, caps) {}

PairComplex::PairComplex(const GroupTable& g, const GroupTable& sub, int top, const PermModule& m,
                         const std::vector<int>& sub_points, const HomologyOptions& caps)
    : cache_(caps.cache) {
  if (top >= 1) check_homology_caps(g.order(), std::min(top - 1, 3), caps);
  PermModule msub = restrict_module(g, sub, m, sub_points);
  std::vector<int> emb = embedding(sub, g);
  amb_ = BarComplex(g, top, m);
  sub_ = BarComplex(sub, top, msub);

  inc_.resize(top + 1);
  qcells_.resize(top + 1);
  qpos_.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    std::vector<char> hit(amb_.rank(n), 0);
    inc_[n].resize(sub_.rank(n));
    std::vector<int> t2;
    for (long j = 0; j < sub_.rank(n); ++j) {
      auto [t, x] = sub_.cell(n, j);
      t2.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) t2[i] = emb[t[i]];
      long a = amb_.index_of(t2, sub_points[x]);
      if (a < 0 || hit[a]) throw MathError("chain map of the pair is not injective");
      hit[a] = 1;
      inc_[n][j] = a;
    }
    qpos_[n].assign(amb_.rank(n), -1);
    for (long a = 0; a < amb_.rank(n); ++a)
      if (!hit[a]) {
        qpos_[n][a] = static_cast<long>(qcells_[n].size());
        qcells_[n].push_back(a);
      }
  }
  qd_.emplace_back(0, static_cast<int>(qcells_[0].size()));
  for (int n = 1; n <= top; ++n) {
    SparseMatrix d(static_cast<int>(qcells_[n - 1].size()));
    for (long a : qcells_[n]) {
      SparseVec col;
      for (auto [i, c] : amb_.boundary(n).column(static_cast<int>(a)))
        if (qpos_[n - 1][i] >= 0) col.emplace_back(static_cast<int>(qpos_[n - 1][i]), c);
      d.add_column(std::move(col));
    }
    qd_.push_back(std::move(d));
  }
}

FpAbelianGroup PairComplex::relative(int n) const {
  if (n < 0 || n + 1 > top()) throw UsageError("pair complex not built through degree " + std::to_string(n + 1));
  return homology_from_boundaries(static_cast<long>(qcells_[n].size()), qd_[n], qd_[n + 1], cache_);
}

LesReport PairComplex::long_exact_sequence(int through) const {
  if (through < 0 || through + 1 > top()) throw UsageError("pair complex not built through degree " + std::to_string(through + 1));
  std::vector<Subquotient> hs, ha, hq;
  for (int n = 0; n <= through; ++n) {
    hs.emplace_back(static_cast<int>(sub_.rank(n)), sub_.boundary(n + 1), sub_.boundary(n));
    ha.emplace_back(static_cast<int>(amb_.rank(n)), amb_.boundary(n + 1), amb_.boundary(n));
    hq.emplace_back(static_cast<int>(qcells_[n].size()), qd_[n + 1], qd_[n]);
  }
  auto morphism = [](const Subquotient& s, const Subquotient& t, auto&& image) {
    std::vector<Vec> cols;
    for (int j = 0; j < s.group().num_generators(); ++j) cols.push_back(t.classify(image(s.representative(j))));
    return AbMorphism(s.group(), t.group(), IntMatrix::from_columns(t.group().num_generators(), cols));
  };
  std::vector<AbMorphism> inc, proj, conn(through + 1);
  for (int n = 0; n <= through; ++n) {
    inc.push_back(morphism(hs[n], ha[n], [&](const Vec& v) {
      Vec out = zero_vec(amb_.rank(n));
      for (std::size_t j = 0; j < v.size(); ++j) out[inc_[n][j]] = v[j];
      return out;
    }));
    proj.push_back(morphism(ha[n], hq[n], [&](const Vec& v) {
      Vec out = zero_vec(qcells_[n].size());
      for (std::size_t q = 0; q < qcells_[n].size(); ++q) out[q] = v[qcells_[n][q]];
      return out;
    }));
    if (n == 0) continue;
    conn[n] = morphism(hq[n], hs[n - 1], [&](const Vec& v) {
      Vec lift = zero_vec(amb_.rank(n));
      for (std::size_t q = 0; q < v.size(); ++q) lift[qcells_[n][q]] = v[q];
      Vec b = apply_sparse(amb_.boundary(n), lift);
      for (long q : qcells_[n - 1])
        if (sgn(b[q]) != 0) throw MathError("connecting map: boundary leaves the subcomplex");
      Vec out = zero_vec(sub_.rank(n - 1));
      for (long j = 0; j < sub_.rank(n - 1); ++j) out[j] = b[inc_[n - 1][j]];
      return out;
    });
  }

  LesReport rep;
  for (int n = 0; n <= through; ++n) {
    rep.sub.push_back(hs[n].group());
    rep.ambient.push_back(ha[n].group());
    rep.relative.push_back(hq[n].group());
  }
  const std::string gn = amb_.group().name(), sn = sub_.group().name();
  for (int n = through; n >= 0; --n) {
    const std::string d = std::to_string(n);
    rep.positions.push_back({"H_" + d + "(" + gn + ")", is_exact_at(inc[n], proj[n])});
    if (n >= 1) {
      rep.positions.push_back({"H_" + d + "(" + gn + "," + sn + ")", is_exact_at(proj[n], conn[n])});
      rep.positions.push_back({"H_" + std::to_string(n - 1) + "(" + sn + ")", is_exact_at(conn[n], inc[n - 1])});
    } else {
      rep.positions.push_back({"H_0(" + gn + "," + sn + ")", is_surjective(proj[0])});
    }
  }
  return rep;
}

Vec commutator_class(const GroupHomology& h, int g, int g2) {
  const BarComplex& c = h.complex();
  const GroupTable& grp = c.group();
  if (h.top() < 2) throw UsageError("commutator classes need H_2");
  if (grp.mul(g, g2) != grp.mul(g2, g)) throw MathError("commutator class needs commuting elements");
  Vec chain = zero_vec(c.rank(2));
  long a = c.index_of({g, g2}), b = c.index_of({g2, g});
  if (a >= 0) chain[a] += 1;
  if (b >= 0) chain[b] -= 1;
  return h.classify(2, chain);
}

Vec x_class(const FiniteRing& r, const GroupHomology& hb, Elem a, Elem b) {
  if (r.mul(b, b) != r.one()) throw MathError("x_a needs b in mu_2");
  const GroupTable& g = hb.complex().group();
  int e = g.index_of(elem_E12(r, a)), d = g.index_of(Mat2{b, 0, 0, b});
  if (e < 0 || d < 0) throw MathError("matrices are not in " + g.name());
  return commutator_class(hb, e, d);
}

SGroupReport s_group(const FiniteRing& r, int n, const HomologyOptions& caps) {
  GroupTable b = enumerate_group(r, GroupKind::B), t = enumerate_group(r, GroupKind::T);
  check_homology_caps(b.order(), n, caps);
  PairComplex p(b, t, n + 1, caps);
  SGroupReport rep;
  rep.n = n;
  rep.s = p.relative(n);
  rep.hb = homology_from_boundaries(p.ambient().rank(n), p.ambient().boundary(n), p.ambient().boundary(n + 1), caps.cache);
  rep.ht = homology_from_boundaries(p.sub().rank(n), p.sub().boundary(n), p.sub().boundary(n + 1), caps.cache);
  rep.split = rep.hb.isomorphic_to(direct_sum(rep.ht, rep.s).group);
  return rep;
}

namespace {

bool mu2_is_plus_minus_one(const FiniteRing& r) {
  std::vector<Elem> m = mu2(r);
  std::set<Elem> got(m.begin(), m.end()), pm{r.one(), r.minus_one()};
  return got == pm;
}

}  // namespace

std::vector<Check> sm2_checks(const FiniteRing& r, const HomologyOptions& caps) {
  GroupTable sm = enumerate_group(r, GroupKind::SM2);
  check_homology_caps(sm.order(), 2, caps);
  BarComplex c(sm, 3);
  FpAbelianGroup h1 = homology_from_boundaries(c.rank(1), c.boundary(1), c.boundary(2), caps.cache);
  FpAbelianGroup h2 = homology_from_boundaries(c.rank(2), c.boundary(2), c.boundary(3), caps.cache);
  UnitGroup u(r);
  SquareClassGroup g(u);

  std::vector<Check> out;
  auto order = h1.order();
  out.push_back(pass_or_fail("|H_1(SM_2)| = 2|G_A|", order && *order == BigInt(2 * g.order()),
                             "H_1 = " + h1.to_string() + ", |G_A| = " + std::to_string(g.order())));
  if (!mu2_is_plus_minus_one(r)) {
    out.push_back({"H_2(SM_2) = A* ^ A* / A* ^ mu_2", Status::SkippedHypothesis,
                   "mu_2 has " + std::to_string(mu2(r).size()) + " elements, not {1,-1}"});
    return out;
  }
  FpAbelianGroup units = u.as_group();
  BilinearGroup w = wedge_square(units);
  Subgroup mu = mu2_subgroup(u);
  std::vector<Vec> cols;
  for (int i = 0; i < units.num_generators(); ++i) {
    Vec e = zero_vec(units.num_generators());
    e[i] = 1;
    for (int j = 0; j < mu.group.num_generators(); ++j) cols.push_back(w.eval(e, mu.inclusion.matrix().column(j)));
  }
  FpAbelianGroup q = quotient_by(w.group(), IntMatrix::from_columns(w.group().num_generators(), cols)).group;
  out.push_back(pass_or_fail("H_2(SM_2) = A* ^ A* / A* ^ mu_2", h2.isomorphic_to(q),
                             "H_2 = " + h2.to_string() + ", quotient = " + q.to_string()));
  return out;
}

RelativeSl2Report relative_sl2_sm2(const FiniteRing& r, int n, const HomologyOptions& caps) {
  if (n < 0 || n > 2) throw UsageError("relative SL_2/SM_2 homology is computed for n <= 2");
  GroupTable sl = enumerate_group(r, GroupKind::SL2), sm = enumerate_group(r, GroupKind::SM2);
  // one degree beyond n for the long exact sequence
  check_homology_caps(sl.order(), n + 1, caps);
  PairComplex p(sl, sm, n + 1, HomologyOptions{caps.h2_order, caps.h3_order, true, caps.cache});

  RelativeSl2Report rep;
  for (int k = 0; k <= n; ++k) rep.groups.push_back(p.relative(k));
  rep.les = p.long_exact_sequence(n);
  UnitGroup u(r);
  SquareClassGroup g(u);
  rep.witt = witt(g).w;
  if (n >= 2) rep.matches_witt = rep.groups[2].isomorphic_to(rep.witt);

  rep.hypotheses.push_back({"GE_2 ring", is_ge2_ring(r), ""});
  {
    GroupTable b = enumerate_group(r, GroupKind::B), t = enumerate_group(r, GroupKind::T);
    int top = -1;
    for (int i = 3; i >= 0 && top < 0; --i) {
      try {
        check_homology_caps(b.order(), i, caps);
        top = i;
      } catch (const CapExceeded&) {
      }
    }
    Hypothesis h{"H_i(T) = H_i(B) for i <= 3", std::nullopt, ""};
    PairComplex pb(b, t, top + 1, HomologyOptions{caps.h2_order, caps.h3_order, true, caps.cache});
    bool all_zero = true;
    for (int i = 0; i <= top; ++i) {
      FpAbelianGroup s = pb.relative(i);
      if (!h.detail.empty()) h.detail += ", ";
      h.detail += "S_" + std::to_string(i) + " = " + s.to_string();
      all_zero = all_zero && s.is_trivial();
    }
    if (!all_zero) h.holds = false;
    else if (top == 3) h.holds = true;
    else h.detail += ", S_i for i > " + std::to_string(top) + " over the caps";
    rep.hypotheses.push_back(h);
  }
  rep.hypotheses.push_back({"mu_2 = {1,-1}", mu2_is_plus_minus_one(r), ""});
  rep.hypotheses.push_back({"-1 is a square", g.class_of(r.minus_one()) == 0, ""});

  const std::string name = "H_2(SL_2, SM_2) = W(A)";
  if (!rep.matches_witt) {
    rep.conclusion = {name, Status::Reported, "degree 2 not computed"};
  } else {
    std::string detail = "H_2 = " + rep.groups[2].to_string() + ", W = " + rep.witt.to_string();
    bool hyp = rep.hypotheses[0].holds.value_or(false) && rep.hypotheses[1].holds.value_or(false);
    rep.conclusion = hyp ? pass_or_fail(name, *rep.matches_witt, detail) : Check{name, Status::Reported, detail};
  }
  return rep;
}

}  // namespace rsc
