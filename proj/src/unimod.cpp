#include "rsc/unimod.hpp"

#include <algorithm>
#include <numeric>

#include "rsc/errors.hpp"

namespace rsc {

LineSet::LineSet(const FiniteRing& r) : r_(&r) {
  const int n = r.size();
  if (static_cast<long>(n) * n > (1L << 24)) throw CapExceeded("too many vectors to enumerate lines of " + r.name());
  std::vector<std::int64_t> canon(static_cast<std::size_t>(n) * n, -1);
  std::vector<std::int64_t> reps;
  for (Elem u1 = 0; u1 < n; ++u1)
    for (Elem u2 = 0; u2 < n; ++u2) {
      std::size_t k = static_cast<std::size_t>(u1) * n + u2;
      if (canon[k] != -1) continue;
      if (!complete_to_sl2(r, u1, u2)) {
        canon[k] = -2;
        continue;
      }
      std::int64_t best = static_cast<std::int64_t>(k);
      for (Elem c : r.units())
        best = std::min<std::int64_t>(best, static_cast<std::int64_t>(r.mul(u1, c)) * n + r.mul(u2, c));
      for (Elem c : r.units()) canon[static_cast<std::size_t>(r.mul(u1, c)) * n + r.mul(u2, c)] = best;
      reps.push_back(best);
    }
  std::sort(reps.begin(), reps.end());
  for (auto code : reps) vecs_.emplace_back(static_cast<Elem>(code / n), static_cast<Elem>(code % n));
  index_.assign(canon.size(), -1);
  for (std::size_t k = 0; k < canon.size(); ++k)
    if (canon[k] >= 0) index_[k] = static_cast<int>(std::lower_bound(reps.begin(), reps.end(), canon[k]) - reps.begin());
}

int LineSet::act(const Mat2& g, int line) const {
  auto [v1, v2] = vecs_[line];
  const FiniteRing& r = *r_;
  return line_of(r.add(r.mul(g.a, v1), r.mul(g.b, v2)), r.add(r.mul(g.c, v1), r.mul(g.d, v2)));
}

Elem LineSet::det(int i, int j) const {
  auto [a, c] = vecs_[i];
  auto [b, d] = vecs_[j];
  return r_->sub(r_->mul(a, d), r_->mul(b, c));
}

std::string LineSet::render(int i) const {
  auto [v1, v2] = vecs_.at(i);
  if (v1 == r_->one() && v2 == 0) return "∞";
  if (v1 == 0 && v2 == r_->one()) return "0";
  if (v1 == r_->one()) return r_->render(v2);
  return "<" + r_->render(v1) + ":" + r_->render(v2) + ">";
}

UnimodularComplex::UnimodularComplex(const FiniteRing& r, int top, long cap) : lines_(r), top_(top) {
  if (top < 0 || top > 4) throw UsageError("complex degree must be between 0 and 4");
  const int nl = lines_.size();
  std::vector<char> compat(static_cast<std::size_t>(nl) * nl, 0);
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nl; ++j) compat[static_cast<std::size_t>(i) * nl + j] = i != j && lines_.generic(i, j);

  codes_.resize(top + 1);
  for (int n = 0; n <= top; ++n) {
    auto& out = codes_[n];
    std::vector<int> t;
    // lexicographic depth-first enumeration keeps the codes sorted
    auto dfs = [&](auto&& self) -> void {
      if (static_cast<int>(t.size()) == n + 1) {
        out.push_back(encode(t));
        if (static_cast<long>(out.size()) > cap)
          throw CapExceeded("X_" + std::to_string(n) + " over " + r.name() + " exceeds " + std::to_string(cap) + " tuples");
        return;
      }
      for (int l = 0; l < nl; ++l) {
        bool ok = true;
        for (int p : t) ok = ok && compat[static_cast<std::size_t>(p) * nl + l];
        if (!ok) continue;
        t.push_back(l);
        self(self);
        t.pop_back();
      }
    };
    dfs(dfs);
  }

  boundary_.reserve(top + 1);
  SparseMatrix eps(1);
  for (long j = 0; j < rank(0); ++j) eps.add_column({{0, 1}});
  boundary_.push_back(std::move(eps));
  for (int n = 1; n <= top; ++n) {
    SparseMatrix d(static_cast<int>(rank(n - 1)));
    for (long j = 0; j < rank(n); ++j) {
      std::vector<int> t = tuple(n, j);
      SparseVec col;
      for (int i = 0; i <= n; ++i) {
        std::vector<int> face = t;
        face.erase(face.begin() + i);
        col.emplace_back(static_cast<int>(index_of(face)), i % 2 ? -1 : 1);
      }
      d.add_column(std::move(col));
    }
    boundary_.push_back(std::move(d));
  }
}

std::uint64_t UnimodularComplex::encode(const std::vector<int>& t) const {
  std::uint64_t code = 0;
  for (int l : t) code = code * static_cast<std::uint64_t>(lines_.size()) + static_cast<std::uint64_t>(l);
  return code;
}

std::vector<int> UnimodularComplex::tuple(int n, long idx) const {
  std::uint64_t code = codes_.at(n).at(idx);
  std::vector<int> t(n + 1);
  for (int i = n; i >= 0; --i) {
    t[i] = static_cast<int>(code % lines_.size());
    code /= lines_.size();
  }
  return t;
}

long UnimodularComplex::index_of(const std::vector<int>& t) const {
  int n = static_cast<int>(t.size()) - 1;
  if (n < 0 || n > top_) return -1;
  for (int l : t)
    if (l < 0) return -1;
  const auto& c = codes_[n];
  auto code = encode(t);
  auto it = std::lower_bound(c.begin(), c.end(), code);
  if (it == c.end() || *it != code) return -1;
  return static_cast<long>(it - c.begin());
}

std::vector<long> UnimodularComplex::permutation(int n, const Mat2& g) const {
  std::vector<long> perm(rank(n));
  for (long j = 0; j < rank(n); ++j) {
    std::vector<int> t = tuple(n, j);
    for (int& l : t) l = lines_.act(g, l);
    perm[j] = index_of(t);
    if (perm[j] < 0) throw MathError("matrix does not act on generic tuples");
  }
  return perm;
}

std::string UnimodularComplex::render(int n, long idx) const {
  std::string s = "(";
  auto t = tuple(n, idx);
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + lines_.render(t[i]);
  return s + ")";
}

Vec UnimodularComplex::basis_vector(int n, long idx) const {
  Vec v = zero_vec(rank(n));
  v.at(idx) = 1;
  return v;
}

SparseVec UnimodularComplex::act(int n, const Mat2& g, const SparseVec& chain) const {
  SparseVec out;
  for (auto [i, c] : chain) {
    std::vector<int> t = tuple(n, i);
    for (int& l : t) l = lines_.act(g, l);
    out.emplace_back(static_cast<int>(index_of(t)), c);
  }
  return canonical_sparse(std::move(out));
}

bool UnimodularComplex::boundaries_compose_to_zero() const {
  for (int n = 1; n <= top_; ++n)
    if (!(boundary_[n - 1] * boundary_[n]).is_zero()) return false;
  return true;
}

bool UnimodularComplex::action_commutes(const Mat2& g) const {
  for (int n = 1; n <= top_; ++n) {
    const SparseMatrix& d = boundary_[n];
    std::vector<long> pn = permutation(n, g), pm = permutation(n - 1, g);
    for (long j = 0; j < rank(n); ++j) {
      SparseVec moved;
      for (auto [i, c] : d.column(static_cast<int>(j))) moved.emplace_back(static_cast<int>(pm[i]), c);
      if (canonical_sparse(std::move(moved)) != d.column(static_cast<int>(pn[j]))) return false;
    }
  }
  return true;
}

FpAbelianGroup complex_homology(const UnimodularComplex& x, int k) {
  if (k < 0 || k + 1 > x.top()) throw UsageError("complex not built through degree " + std::to_string(k + 1));
  return Subquotient(static_cast<int>(x.rank(k)), x.boundary(k + 1), x.boundary(k)).group();
}

OrbitDecomposition orbit_decomposition(const UnimodularComplex& x, int n, const std::vector<Mat2>& gens) {
  const long size = x.rank(n);
  std::vector<long> parent(size);
  std::iota(parent.begin(), parent.end(), 0L);
  auto find = [&](long v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& g : gens) {
    std::vector<long> p = x.permutation(n, g);
    for (long j = 0; j < size; ++j) {
      long a = find(j), b = find(p[j]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  OrbitDecomposition od;
  od.orbit_of.assign(size, -1);
  std::vector<long> id_of_root(size, -1);
  for (long j = 0; j < size; ++j) {
    long root = find(j);
    if (id_of_root[root] < 0) {
      id_of_root[root] = static_cast<long>(od.reps.size());
      od.reps.push_back(root);
      od.sizes.push_back(0);
    }
    od.orbit_of[j] = id_of_root[root];
    ++od.sizes[od.orbit_of[j]];
  }
  return od;
}

std::vector<int> stabilizer(const UnimodularComplex& x, int n, long idx, const GroupTable& g) {
  std::vector<int> t = x.tuple(n, idx);
  std::vector<int> out;
  for (int i = 0; i < g.order(); ++i) {
    bool fixed = true;
    for (int l : t) fixed = fixed && x.lines().act(g.matrix(i), l) == l;
    if (fixed) out.push_back(i);
  }
  return out;
}

int triple_class(const UnimodularComplex& x, const SquareClassGroup& g, long idx) {
  auto t = x.tuple(2, idx);
  const LineSet& l = x.lines();
  const FiniteRing& r = x.ring();
  return g.class_of(r.mul(r.mul(l.det(t[0], t[1]), l.det(t[1], t[2])), l.det(t[2], t[0])));
}

namespace {

SparseMatrix coinvariant_relations(const UnimodularComplex& x, int n, const std::vector<Mat2>& gens) {
  std::vector<SparseVec> z = sparse_kernel(x.boundary(n));
  SparseMatrix rel(static_cast<int>(x.rank(n)));
  for (const auto& g : gens) {
    std::vector<long> p = x.permutation(n, g);
    for (const auto& v : z) {
      SparseVec col;
      for (auto [i, c] : v) {
        col.emplace_back(static_cast<int>(p[i]), c);
        col.emplace_back(i, -c);
      }
      col = canonical_sparse(std::move(col));
      if (!col.empty()) rel.add_column(std::move(col));
    }
  }
  return rel;
}

SparseVec sparse_of(std::vector<std::pair<long, std::int64_t>> terms) {
  SparseVec v;
  for (auto [i, c] : terms) {
    if (i < 0) throw MathError("tuple is not generic");
    v.emplace_back(static_cast<int>(i), c);
  }
  return canonical_sparse(std::move(v));
}

}  // namespace

DirectModels::DirectModels(const UnimodularComplex& x, const SquareClassGroup& g, const std::vector<Mat2>& gens)
    : x_(&x), g_(&g) {
  if (x.top() < 2) throw UsageError("direct models need the complex through degree 2");
  rp_ = Subquotient(static_cast<int>(x.rank(2)), coinvariant_relations(x, 2, gens), x.boundary(2));
  gw_ = Subquotient(static_cast<int>(x.rank(1)), coinvariant_relations(x, 1, gens), x.boundary(1));

  x2_class_.resize(x.rank(2));
  for (long j = 0; j < x.rank(2); ++j) x2_class_[j] = triple_class(x, g, j);

  const int n = g.order();
  IntMatrix lam(n, rp_.group().num_generators());
  for (int i = 0; i < lam.cols(); ++i) {
    const Vec& rep = rp_.representative(i);
    for (long j = 0; j < x.rank(2); ++j) lam(x2_class_[j], i) += rep[j];
  }
  lambda_ = AbMorphism(rp_.group(), FpAbelianGroup::free(n), lam);

  IntMatrix eps(1, gw_.group().num_generators());
  for (int i = 0; i < eps.cols(); ++i)
    for (const auto& c : gw_.representative(i)) eps(0, i) += c;
  epsilon_ = AbMorphism(gw_.group(), FpAbelianGroup::free(1), eps);
  i_ = kernel(epsilon_);
}

SparseVec DirectModels::psi1_chain(Elem a) const {
  const LineSet& l = x_->lines();
  const Elem one = x_->ring().one();
  int inf = l.infinity(), zero = l.zero();
  return sparse_of({{x_->index_of({inf, zero, l.point(a)}), 1},
                    {x_->index_of({zero, inf, l.point(a)}), 1},
                    {x_->index_of({inf, zero, l.point(one)}), -1},
                    {x_->index_of({zero, inf, l.point(one)}), -1}});
}

Vec DirectModels::orbit_sums(const SparseVec& chain) const {
  Vec out = zero_vec(g_->order());
  for (auto [i, c] : chain) out[x2_class_.at(i)] += c;
  return out;
}

namespace {

// Does the image of f contain the subgroup with the given inclusion into the same target?
bool image_contains(const AbMorphism& f, const AbMorphism& inclusion) {
  Quotient q = quotient_by(f.target(), f.matrix());
  return inclusion.then(q.projection).is_zero();
}

ComparisonEntry compare(const std::string& name, const FpAbelianGroup& src, const FpAbelianGroup& tgt,
                        const IntMatrix& m, const AbMorphism* onto = nullptr) {
  ComparisonEntry e;
  e.name = name;
  e.source = src.to_string();
  e.target = onto ? onto->source().to_string() : tgt.to_string();
  e.well_defined = ill_defined_relations(src, tgt, m).empty();
  if (!e.well_defined) return e;
  AbMorphism f(src, tgt, m);
  e.injective = is_injective(f);
  e.surjective = onto ? image_contains(f, *onto) : is_surjective(f);
  return e;
}

}  // namespace

ComparisonReport compare_presented_direct(const RpBar& rp, const WittData& wd, const DirectModels& dm) {
  const UnimodularComplex& x = dm.complex();
  const LineSet& l = x.lines();
  const FiniteRing& r = x.ring();
  const SquareClassGroup& g = *rp.g;
  const int inf = l.infinity(), zero = l.zero();
  ComparisonReport rep;

  // <c>[x] -> boundary of (inf, 0, a, ax) with a the representative of c
  IntMatrix m(dm.rp().num_generators(), rp.pres.flat_size());
  for (std::size_t s = 0; s < rp.w.size(); ++s)
    for (int c = 0; c < g.order(); ++c) {
      Elem a = g.representative(c);
      int pa = l.point(a), pax = l.point(r.mul(a, rp.w[s]));
      SparseVec d = sparse_of({{x.index_of({zero, pa, pax}), 1},
                               {x.index_of({inf, pa, pax}), -1},
                               {x.index_of({inf, zero, pax}), 1},
                               {x.index_of({inf, zero, pa}), -1}});
      Vec v = dm.rp_class(d);
      int col = rp.pres.flat_index(static_cast<int>(s), c);
      for (int i = 0; i < m.rows(); ++i) m(i, col) = v[i];
    }
  rep.entries.push_back(compare("RP-bar -> RP", rp.group, dm.rp(), m));

  auto triangle = [&](Elem a) {
    int pa = l.point(a);
    return sparse_of({{x.index_of({zero, pa}), 1}, {x.index_of({inf, pa}), -1}, {x.index_of({inf, zero}), 1}});
  };
  std::vector<Vec> gw_img;
  for (int c = 0; c < g.order(); ++c) gw_img.push_back(dm.gw_class(triangle(g.representative(c))));
  const int ng = dm.gw().num_generators();
  rep.entries.push_back(compare("GW-bar -> GW", wd.gw, dm.gw(), IntMatrix::from_columns(ng, gw_img)));

  std::vector<Vec> i_img;
  for (int c = 1; c < g.order(); ++c) {
    Vec v = gw_img[c];
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= gw_img[0][k];
    i_img.push_back(v);
  }
  IntMatrix im = IntMatrix::from_columns(ng, i_img);
  const AbMorphism& inc = dm.i().inclusion;
  rep.entries.push_back(compare("I-bar -> I", wd.i, dm.gw(), im, &inc));

  std::vector<Vec> pi;
  for (int c = 1; c < g.order(); ++c) pi.push_back(ideal_coords(p_minus_one_plus(g) * (GroupRingElem::basis(g.order(), c) - GroupRingElem::scalar(g.order(), 1))));
  FpAbelianGroup ia_mod(g.order() - 1, IntMatrix::from_columns(g.order() - 1, pi));
  rep.entries.push_back(compare("I_A/p I_A -> I", ia_mod, dm.gw(), im, &inc));
  return rep;
}

}  // namespace rsc
