#include "rsc/sl2.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <unordered_set>

#include "rsc/errors.hpp"

namespace rsc {

namespace {

std::uint64_t key_of(const FiniteRing& r, const Mat2& m) {
  const std::uint64_t n = static_cast<std::uint64_t>(r.size());
  return ((static_cast<std::uint64_t>(m.a) * n + m.b) * n + m.c) * n + m.d;
}

void check_key_range(const FiniteRing& r) {
  if (r.size() > (1 << 16)) throw CapExceeded("matrix groups over rings larger than 65536 elements");
}

}  // namespace

Mat2 mat_mul(const FiniteRing& r, const Mat2& x, const Mat2& y) {
  return {r.add(r.mul(x.a, y.a), r.mul(x.b, y.c)), r.add(r.mul(x.a, y.b), r.mul(x.b, y.d)),
          r.add(r.mul(x.c, y.a), r.mul(x.d, y.c)), r.add(r.mul(x.c, y.b), r.mul(x.d, y.d))};
}

Elem mat_det(const FiniteRing& r, const Mat2& x) { return r.sub(r.mul(x.a, x.d), r.mul(x.b, x.c)); }

Mat2 mat_inv_sl2(const FiniteRing& r, const Mat2& x) { return {x.d, r.neg(x.b), r.neg(x.c), x.a}; }

Mat2 mat_identity(const FiniteRing& r) { return {r.one(), 0, 0, r.one()}; }

Mat2 mat_neg(const FiniteRing& r, const Mat2& x) { return {r.neg(x.a), r.neg(x.b), r.neg(x.c), r.neg(x.d)}; }

std::string render(const FiniteRing& r, const Mat2& x) {
  return "[[" + r.render(x.a) + "," + r.render(x.b) + "],[" + r.render(x.c) + "," + r.render(x.d) + "]]";
}

Mat2 elem_E(const FiniteRing& r, Elem x) { return {x, r.one(), r.minus_one(), 0}; }
Mat2 elem_E12(const FiniteRing& r, Elem x) { return {r.one(), x, 0, r.one()}; }
Mat2 elem_E21(const FiniteRing& r, Elem x) { return {r.one(), 0, x, r.one()}; }
Mat2 elem_D(const FiniteRing& r, Elem a) { return {a, 0, 0, r.inv(a)}; }
Mat2 elem_w(const FiniteRing& r) { return elem_E(r, 0); }

std::optional<Mat2> complete_to_sl2(const FiniteRing& r, Elem a, Elem c) {
  // Finite rings have stable range one: (a, c) is unimodular iff a + ct is a unit for some t.
  // Then a u^-1 + c (t u^-1) = 1 with u = a + ct.
  for (Elem t = 0; t < r.size(); ++t) {
    Elem u = r.add(a, r.mul(c, t));
    if (!r.is_unit(u)) continue;
    Elem ui = r.inv(u);
    return Mat2{a, r.neg(r.mul(t, ui)), c, ui};
  }
  return std::nullopt;
}

GroupTable GroupTable::from_matrices(const FiniteRing& r, std::vector<Mat2> elems, std::string name) {
  check_key_range(r);
  GroupTable g;
  g.name_ = std::move(name);
  g.ring_ = &r;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  g.n_ = static_cast<int>(elems.size());
  g.mats_ = std::move(elems);
  g.keys_.reserve(g.n_);
  for (const auto& m : g.mats_) g.keys_.push_back(key_of(r, m));
  if (!std::is_sorted(g.keys_.begin(), g.keys_.end())) throw MathError("matrix key order disagrees with element order");
  if (g.n_ <= kTableLimit) {
    g.table_.resize(static_cast<std::size_t>(g.n_) * g.n_);
    for (int i = 0; i < g.n_; ++i)
      for (int j = 0; j < g.n_; ++j) {
        int k = g.index_of(mat_mul(r, g.mats_[i], g.mats_[j]));
        if (k < 0) throw MathError(g.name_ + " is not closed under multiplication");
        g.table_[static_cast<std::size_t>(i) * g.n_ + j] = k;
      }
  }
  g.finish();
  return g;
}

GroupTable GroupTable::cyclic(int m) {
  if (m < 1) throw UsageError("cyclic group order must be positive");
  std::vector<int> t(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[static_cast<std::size_t>(i) * m + j] = (i + j) % m;
  return from_table(m, std::move(t), "Z/" + std::to_string(m));
}

GroupTable GroupTable::from_table(int n, std::vector<int> table, std::string name) {
  if (n < 1 || table.size() != static_cast<std::size_t>(n) * n) throw UsageError("table has wrong size");
  for (int v : table)
    if (v < 0 || v >= n) throw MathError("table entry out of range");
  GroupTable g;
  g.name_ = std::move(name);
  g.n_ = n;
  g.table_ = std::move(table);
  if (n <= 64) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (g.mul(g.mul(i, j), k) != g.mul(i, g.mul(j, k))) throw MathError(g.name_ + " table is not associative");
  }
  g.finish();
  return g;
}

void GroupTable::finish() {
  id_ = -1;
  if (ring_) {
    id_ = index_of(mat_identity(*ring_));
  } else {
    for (int e = 0; e < n_ && id_ < 0; ++e) {
      bool ok = true;
      for (int i = 0; i < n_ && ok; ++i) ok = mul(e, i) == i && mul(i, e) == i;
      if (ok) id_ = e;
    }
  }
  if (id_ < 0) throw MathError(name_ + " has no identity");
  inv_.assign(n_, -1);
  for (int i = 0; i < n_; ++i) {
    if (ring_) {
      inv_[i] = index_of(mat_inv_sl2(*ring_, mats_[i]));
    } else {
      for (int j = 0; j < n_; ++j)
        if (mul(i, j) == id_) {
          inv_[i] = j;
          break;
        }
    }
    if (inv_[i] < 0 || mul(i, inv_[i]) != id_) throw MathError(name_ + " element " + std::to_string(i) + " has no inverse");
  }
}

int GroupTable::mul(int i, int j) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(i) * n_ + j];
  return index_of(mat_mul(*ring_, mats_[i], mats_[j]));
}

int GroupTable::index_of(const Mat2& m) const {
  if (!ring_) return -1;
  auto k = key_of(*ring_, m);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return -1;
  return static_cast<int>(it - keys_.begin());
}

std::string GroupTable::render(int i) const {
  if (ring_) return rsc::render(*ring_, mats_.at(i));
  return "g" + std::to_string(i);
}

std::vector<int> embedding(const GroupTable& sub, const GroupTable& g) {
  std::vector<int> pos(sub.order());
  if (!sub.is_matrix_group() || !g.is_matrix_group()) {
    // abstract groups embed only as themselves
    bool same = sub.order() == g.order();
    for (int i = 0; i < sub.order() && same; ++i)
      for (int j = 0; j < sub.order() && same; ++j) same = sub.mul(i, j) == g.mul(i, j);
    if (!same) throw UsageError("embedding of abstract groups needs identical tables");
    for (int i = 0; i < sub.order(); ++i) pos[i] = i;
    return pos;
  }
  for (int i = 0; i < sub.order(); ++i) {
    pos[i] = g.index_of(sub.matrix(i));
    if (pos[i] < 0) throw MathError(sub.name() + " is not contained in " + g.name());
  }
  for (int i = 0; i < sub.order(); ++i)
    for (int j = 0; j < sub.order() && sub.has_table(); ++j)
      if (g.mul(pos[i], pos[j]) != pos[sub.mul(i, j)]) throw MathError("embedding is not multiplicative");
  return pos;
}

GroupKind parse_group_kind(const std::string& s) {
  if (s == "SL2") return GroupKind::SL2;
  if (s == "E2") return GroupKind::E2;
  if (s == "SM2") return GroupKind::SM2;
  if (s == "T") return GroupKind::T;
  if (s == "B") return GroupKind::B;
  throw UsageError("unknown group '" + s + "'");
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::SL2: return "SL2";
    case GroupKind::E2: return "E2";
    case GroupKind::SM2: return "SM2";
    case GroupKind::T: return "T";
    case GroupKind::B: return "B";
  }
  return "?";
}

long sl2_order(const FiniteRing& r) {
  long cols = 0;
  for (Elem a = 0; a < r.size(); ++a)
    for (Elem c = 0; c < r.size(); ++c)
      if (r.is_unit(a) || r.is_unit(c) || complete_to_sl2(r, a, c)) ++cols;
  return cols * r.size();
}

std::vector<Mat2> closure(const FiniteRing& r, const std::vector<Mat2>& gens, long cap) {
  check_key_range(r);
  std::unordered_set<std::uint64_t> seen;
  std::vector<Mat2> out{mat_identity(r)};
  seen.insert(key_of(r, out[0]));
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      Mat2 m = mat_mul(r, out[head], g);
      if (seen.insert(key_of(r, m)).second) {
        out.push_back(m);
        if (static_cast<long>(out.size()) > cap) throw CapExceeded("group closure exceeds " + std::to_string(cap) + " elements");
      }
    }
  }
  return out;
}

GroupTable enumerate_group(const FiniteRing& r, GroupKind which, long cap) {
  const int n = r.size();
  std::vector<Mat2> elems;
  switch (which) {
    case GroupKind::SL2: {
      long order = sl2_order(r);
      if (order > cap) throw CapExceeded("|SL2(" + r.name() + ")| = " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
      elems.reserve(order);
      for (Elem a = 0; a < n; ++a)
        for (Elem c = 0; c < n; ++c) {
          auto m = complete_to_sl2(r, a, c);
          if (!m) continue;
          for (Elem t = 0; t < n; ++t)  // right multiplication by E12(t)
            elems.push_back({a, r.add(m->b, r.mul(a, t)), c, r.add(m->d, r.mul(c, t))});
        }
      break;
    }
    case GroupKind::E2: {
      std::vector<Mat2> gens;
      for (Elem x = 0; x < n; ++x) gens.push_back(elem_E(r, x));
      elems = closure(r, gens, cap);
      break;
    }
    case GroupKind::SM2:
      for (Elem u : r.units()) {
        elems.push_back(elem_D(r, u));
        elems.push_back({0, u, r.neg(r.inv(u)), 0});
      }
      break;
    case GroupKind::T:
      for (Elem u : r.units()) elems.push_back(elem_D(r, u));
      break;
    case GroupKind::B:
      for (Elem u : r.units())
        for (Elem b = 0; b < n; ++b) elems.push_back({u, b, 0, r.inv(u)});
      break;
  }
  if (static_cast<long>(elems.size()) > cap) throw CapExceeded("group exceeds cap " + std::to_string(cap));
  return GroupTable::from_matrices(r, std::move(elems), to_string(which) + "(" + r.name() + ")");
}

bool is_ge2_ring(const FiniteRing& r, long cap) {
  long order = sl2_order(r);
  if (order > cap) throw CapExceeded("|SL2(" + r.name() + ")| exceeds cap " + std::to_string(cap));
  std::vector<Mat2> gens;
  for (Elem x = 0; x < r.size(); ++x) gens.push_back(elem_E(r, x));
  return static_cast<long>(closure(r, gens, cap).size()) == order;
}

std::vector<Mat2> minimal_e_generators(const FiniteRing& r, long cap) {
  std::vector<Mat2> chosen;
  std::set<Mat2> span{mat_identity(r)};
  for (Elem x = 0; x < r.size(); ++x) {
    Mat2 e = elem_E(r, x);
    if (span.count(e)) continue;
    chosen.push_back(e);
    auto c = closure(r, chosen, cap);
    span = std::set<Mat2>(c.begin(), c.end());
  }
  return chosen;
}

std::vector<Mat2> sl2_generators(const FiniteRing& r, long cap) {
  std::vector<Mat2> gens = minimal_e_generators(r, cap);
  auto span = closure(r, gens, cap);
  if (static_cast<long>(span.size()) == sl2_order(r)) return gens;
  GroupTable sl2 = enumerate_group(r, GroupKind::SL2, cap);
  std::set<Mat2> have(span.begin(), span.end());
  for (int i = 0; i < sl2.order(); ++i) {
    if (have.count(sl2.matrix(i))) continue;
    gens.push_back(sl2.matrix(i));
    auto c = closure(r, gens, cap);
    have = std::set<Mat2>(c.begin(), c.end());
  }
  return gens;
}

Ge2RelationReport verify_ge2_relations(const FiniteRing& r, std::uint64_t seed, long samples) {
  Ge2RelationReport rep;
  const int n = r.size();
  const auto& units = r.units();
  const long nu = static_cast<long>(units.size());
  rep.exhaustive = n <= 64;
  std::mt19937_64 rng(seed);
  auto pick = [&](long m) { return static_cast<long>(rng() % static_cast<std::uint64_t>(m)); };
  auto fail = [&](const std::string& what) {
    if (rep.counterexamples.size() < 20) rep.counterexamples.push_back(what);
  };
  const Mat2 dm1 = elem_D(r, r.minus_one());
  const Mat2 e0 = elem_E(r, 0);

  auto rel1 = [&](Elem x, Elem y) {
    ++rep.checked[0];
    Mat2 lhs = mat_mul(r, mat_mul(r, elem_E(r, x), e0), elem_E(r, y));
    Mat2 rhs = mat_mul(r, dm1, elem_E(r, r.add(x, y)));
    if (lhs != rhs) fail("(1) x=" + r.render(x) + " y=" + r.render(y));
  };
  auto rel2 = [&](Elem x, Elem a) {
    ++rep.checked[1];
    Mat2 lhs = mat_mul(r, elem_E(r, x), elem_D(r, a));
    Mat2 rhs = mat_mul(r, elem_D(r, r.inv(a)), elem_E(r, r.mul(r.mul(a, a), x)));
    if (lhs != rhs) fail("(2) x=" + r.render(x) + " a=" + r.render(a));
  };
  auto rel3 = [&](Elem a, Elem b) {
    ++rep.checked[2];
    if (mat_mul(r, elem_D(r, a), elem_D(r, b)) != elem_D(r, r.mul(a, b)))
      fail("(3) a=" + r.render(a) + " b=" + r.render(b));
  };

  if (rep.exhaustive) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) rel1(x, y);
    for (Elem x = 0; x < n; ++x)
      for (Elem a : units) rel2(x, a);
    for (Elem a : units)
      for (Elem b : units) rel3(a, b);
  } else {
    for (long s = 0; s < samples; ++s) {
      rel1(static_cast<Elem>(pick(n)), static_cast<Elem>(pick(n)));
      rel2(static_cast<Elem>(pick(n)), units[pick(nu)]);
      rel3(units[pick(nu)], units[pick(nu)]);
    }
  }
  return rep;
}

}  // namespace rsc
