#include "rsc/ring.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "rsc/errors.hpp"

namespace rsc {

namespace {

constexpr int kTableLimit = 4096;
constexpr long kMaxRingSize = 1L << 20;

int parse_int(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw UsageError("malformed " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

// (p, d) with q = p^d, or (0, 0) if q is not a prime power.
std::pair<int, int> prime_power(int q) {
  if (q < 2) return {0, 0};
  int p = 2;
  while (static_cast<long>(p) * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  int d = 0;
  while (q % p == 0) {
    q /= p;
    ++d;
  }
  return q == 1 ? std::pair{p, d} : std::pair{0, 0};
}

RingSpec parse_simple(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw UsageError("ring spec needs '<kind>:<param>': " + std::string(text));
  auto kind = text.substr(0, colon);
  auto arg = text.substr(colon + 1);
  RingSpec s;
  if (kind == "zmod") {
    s.kind = RingKind::Zmod;
    s.modulus = parse_int(arg, "zmod modulus");
    if (s.modulus < 2) throw UsageError("zmod modulus must be at least 2");
  } else if (kind == "gf") {
    s.kind = RingKind::Gf;
    s.modulus = parse_int(arg, "gf order");
    if (prime_power(s.modulus).first == 0) throw UsageError("gf order " + std::string(arg) + " is not a prime power");
  } else if (kind == "prod") {
    throw UsageError("nested prod is not allowed");
  } else {
    throw UsageError("unknown ring kind '" + std::string(kind) + "'");
  }
  if (s.modulus > kMaxRingSize) throw UsageError("ring too large");
  return s;
}

// Polynomials over F_p, low degree first.
using Poly = std::vector<int>;

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly f, const Poly& g, int p) {
  trim(f);
  const int dg = static_cast<int>(g.size()) - 1;
  int lead_inv = 1;
  while (lead_inv * g.back() % p != 1) ++lead_inv;
  while (static_cast<int>(f.size()) - 1 >= dg) {
    int shift = static_cast<int>(f.size()) - 1 - dg;
    int c = f.back() * lead_inv % p;
    for (int i = 0; i <= dg; ++i) f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
    trim(f);
  }
  return f;
}

bool irreducible(const Poly& f, int p) {
  const int d = static_cast<int>(f.size()) - 1;
  for (int k = 1; k <= d / 2; ++k) {
    long count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (long m = 0; m < count; ++m) {
      Poly g(k + 1, 0);
      long x = m;
      for (int i = 0; i < k; ++i) {
        g[i] = static_cast<int>(x % p);
        x /= p;
      }
      g[k] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Least monic irreducible of degree d, ordering by the integer sum c_i p^i.
Poly least_irreducible(int p, int d) {
  long count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (long m = 0; m < count; ++m) {
    Poly f(d + 1, 0);
    long x = m;
    for (int i = 0; i < d; ++i) {
      f[i] = static_cast<int>(x % p);
      x /= p;
    }
    f[d] = 1;
    if (irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

long ext_inverse(long a, long n) {
  long t = 0, nt = 1, r = n, nr = a;
  while (nr != 0) {
    long q = r / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(r, nr) = std::pair{nr, r - q * nr};
  }
  if (r != 1) return -1;
  return t < 0 ? t + n : t;
}

}  // namespace

std::string RingSpec::to_string() const {
  switch (kind) {
    case RingKind::Zmod: return "zmod:" + std::to_string(modulus);
    case RingKind::Gf: return "gf:" + std::to_string(modulus);
    case RingKind::Prod: {
      std::string s = "prod:";
      for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "," : "") + factors[i].to_string();
      return s;
    }
  }
  return {};
}

RingSpec parse_ring_spec(std::string_view text) {
  if (text.substr(0, 5) == "prod:") {
    RingSpec s;
    s.kind = RingKind::Prod;
    std::string_view rest = text.substr(5);
    long size = 1;
    while (true) {
      auto comma = rest.find(',');
      s.factors.push_back(parse_simple(rest.substr(0, comma)));
      size *= s.factors.back().modulus;
      if (size > kMaxRingSize) throw UsageError("ring too large");
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (s.factors.size() < 2) throw UsageError("prod needs at least two factors");
    return s;
  }
  return parse_simple(text);
}

FiniteRing::FiniteRing(const RingSpec& spec) : spec_(spec) {
  switch (spec_.kind) {
    case RingKind::Zmod:
      n_ = spec_.modulus;
      char_ = n_;
      if (n_ < 2) throw UsageError("zmod modulus must be at least 2");
      add_basis_ = {1};
      add_orders_ = {n_};
      break;
    case RingKind::Gf: {
      auto [p, d] = prime_power(spec_.modulus);
      if (p == 0) throw UsageError("gf order is not a prime power");
      p_ = p;
      d_ = d;
      n_ = spec_.modulus;
      char_ = p;
      poly_ = least_irreducible(p, d);
      int pi = 1;
      for (int i = 0; i < d; ++i, pi *= p) {
        add_basis_.push_back(pi);
        add_orders_.push_back(p);
      }
      break;
    }
    case RingKind::Prod: {
      if (spec_.factors.size() < 2) throw UsageError("prod needs at least two factors");
      n_ = 1;
      char_ = 1;
      for (const auto& f : spec_.factors) {
        if (f.kind == RingKind::Prod) throw UsageError("nested prod is not allowed");
        factors_.emplace_back(f);
        n_ *= factors_.back().size();
        char_ = std::lcm(char_, factors_.back().characteristic());
      }
      strides_.assign(factors_.size(), 1);
      for (int k = static_cast<int>(factors_.size()) - 2; k >= 0; --k)
        strides_[k] = strides_[k + 1] * factors_[k + 1].size();
      std::vector<Elem> ones;
      for (const auto& f : factors_) ones.push_back(f.one());
      one_ = from_components(ones);
      for (std::size_t k = 0; k < factors_.size(); ++k)
        for (std::size_t b = 0; b < factors_[k].additive_basis().size(); ++b) {
          add_basis_.push_back(factors_[k].additive_basis()[b] * strides_[k]);
          add_orders_.push_back(factors_[k].additive_orders()[b]);
        }
      break;
    }
  }
  neg_.resize(n_);
  for (Elem a = 0; a < n_; ++a) {
    switch (spec_.kind) {
      case RingKind::Zmod: neg_[a] = (n_ - a) % n_; break;
      case RingKind::Gf: {
        Elem r = 0, x = a, pi = 1;
        for (int i = 0; i < d_; ++i, pi *= p_, x /= p_) r += ((p_ - x % p_) % p_) * pi;
        neg_[a] = r;
        break;
      }
      case RingKind::Prod: {
        auto c = components(a);
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = factors_[k].neg(c[k]);
        neg_[a] = from_components(c);
        break;
      }
    }
  }
  if (n_ <= kTableLimit) {
    add_tab_.resize(static_cast<std::size_t>(n_) * n_);
    mul_tab_.resize(static_cast<std::size_t>(n_) * n_);
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b) {
        add_tab_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::uint16_t>(add_formula(a, b));
        mul_tab_[static_cast<std::size_t>(a) * n_ + b] = static_cast<std::uint16_t>(mul_formula(a, b));
      }
  }
  inv_.assign(n_, -1);
  for (Elem a = 0; a < n_; ++a) {
    switch (spec_.kind) {
      case RingKind::Zmod: inv_[a] = static_cast<Elem>(ext_inverse(a, n_)); break;
      case RingKind::Gf:
        if (a != 0) inv_[a] = pow(a, n_ - 2);
        break;
      case RingKind::Prod: {
        auto c = components(a);
        bool ok = true;
        for (std::size_t k = 0; k < c.size() && ok; ++k) {
          if (!factors_[k].is_unit(c[k]))
            ok = false;
          else
            c[k] = factors_[k].inv(c[k]);
        }
        if (ok) inv_[a] = from_components(c);
        break;
      }
    }
    if (inv_[a] >= 0) units_.push_back(a);
  }
}

Elem FiniteRing::add_formula(Elem a, Elem b) const {
  switch (spec_.kind) {
    case RingKind::Zmod: return static_cast<Elem>((static_cast<long>(a) + b) % n_);
    case RingKind::Gf: {
      Elem r = 0, pi = 1;
      for (int i = 0; i < d_; ++i, pi *= p_, a /= p_, b /= p_) r += ((a % p_ + b % p_) % p_) * pi;
      return r;
    }
    case RingKind::Prod: {
      auto x = components(a), y = components(b);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = factors_[k].add(x[k], y[k]);
      return from_components(x);
    }
  }
  return 0;
}

Elem FiniteRing::mul_formula(Elem a, Elem b) const {
  switch (spec_.kind) {
    case RingKind::Zmod: return static_cast<Elem>(static_cast<long>(a) * b % n_);
    case RingKind::Gf: {
      std::vector<long> x(d_), y(d_), prod(2 * d_, 0);
      for (int i = 0; i < d_; ++i, a /= p_, b /= p_) {
        x[i] = a % p_;
        y[i] = b % p_;
      }
      for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
      for (int k = 2 * d_ - 1; k >= d_; --k) {
        long c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < d_; ++i) prod[k - d_ + i] = ((prod[k - d_ + i] - c * poly_[i]) % p_ + p_) % p_;
      }
      Elem r = 0, pi = 1;
      for (int i = 0; i < d_; ++i, pi *= p_) r += static_cast<Elem>(prod[i]) * pi;
      return r;
    }
    case RingKind::Prod: {
      auto x = components(a), y = components(b);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = factors_[k].mul(x[k], y[k]);
      return from_components(x);
    }
  }
  return 0;
}

Elem FiniteRing::add(Elem a, Elem b) const {
  if (!add_tab_.empty()) return add_tab_[static_cast<std::size_t>(a) * n_ + b];
  return add_formula(a, b);
}

Elem FiniteRing::mul(Elem a, Elem b) const {
  if (!mul_tab_.empty()) return mul_tab_[static_cast<std::size_t>(a) * n_ + b];
  return mul_formula(a, b);
}

Elem FiniteRing::pow(Elem a, long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  Elem r = one_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem FiniteRing::inv(Elem a) const {
  if (a < 0 || a >= n_ || inv_[a] < 0) throw MathError(render(a) + " is not a unit in " + name());
  return inv_[a];
}

Elem FiniteRing::from_int(long v) const {
  switch (spec_.kind) {
    case RingKind::Zmod: return static_cast<Elem>(((v % n_) + n_) % n_);
    case RingKind::Gf: return static_cast<Elem>(((v % p_) + p_) % p_);
    case RingKind::Prod: {
      std::vector<Elem> c;
      for (const auto& f : factors_) c.push_back(f.from_int(v));
      return from_components(c);
    }
  }
  return 0;
}

std::vector<Elem> FiniteRing::components(Elem a) const {
  std::vector<Elem> c(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    c[k] = a / strides_[k];
    a %= strides_[k];
  }
  return c;
}

Elem FiniteRing::from_components(const std::vector<Elem>& c) const {
  Elem a = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) a += c[k] * strides_[k];
  return a;
}

std::string FiniteRing::render(Elem a) const {
  switch (spec_.kind) {
    case RingKind::Zmod: return std::to_string(a);
    case RingKind::Gf: {
      if (d_ == 1) return std::to_string(a);
      std::vector<int> c(d_);
      for (int i = 0; i < d_; ++i, a /= p_) c[i] = a % p_;
      std::string s;
      for (int i = d_ - 1; i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
      }
      return s.empty() ? "0" : s;
    }
    case RingKind::Prod: {
      auto c = components(a);
      std::string s = "(";
      for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + factors_[k].render(c[k]);
      return s + ")";
    }
  }
  return {};
}

Elem FiniteRing::parse_element(std::string_view text) const {
  for (Elem a = 0; a < n_; ++a)
    if (render(a) == text) return a;
  if (spec_.kind != RingKind::Prod) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty()) return from_int(v);
  }
  throw UsageError("'" + std::string(text) + "' is not an element of " + name());
}

bool FiniteRing::is_field() const {
  if (spec_.kind == RingKind::Gf) return true;
  if (spec_.kind == RingKind::Prod) return false;
  return static_cast<int>(units_.size()) == n_ - 1;
}

bool FiniteRing::is_local() const {
  if (spec_.kind == RingKind::Prod) return false;
  if (spec_.kind == RingKind::Gf) return true;
  return prime_power(n_).first != 0;
}

std::vector<long> FiniteRing::additive_coords(Elem a) const {
  switch (spec_.kind) {
    case RingKind::Zmod: return {a};
    case RingKind::Gf: {
      std::vector<long> c(d_);
      for (int i = 0; i < d_; ++i, a /= p_) c[i] = a % p_;
      return c;
    }
    case RingKind::Prod: {
      std::vector<long> out;
      auto c = components(a);
      for (std::size_t k = 0; k < c.size(); ++k) {
        auto sub = factors_[k].additive_coords(c[k]);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
  }
  return {};
}

UnitGroup::UnitGroup(const FiniteRing& ring) : ring_(&ring) {
  const auto& us = ring.units();
  const int n = ring.size();
  // Grow a subgroup one generator at a time, recording the relation of each new generator.
  std::vector<int> pos(n, -1);
  std::vector<Elem> elems{ring.one()};
  std::vector<std::vector<long>> exps{{}};
  pos[ring.one()] = 0;
  std::vector<Elem> old_gens;
  std::vector<std::vector<long>> rels;
  for (Elem u : us) {
    if (pos[u] >= 0) continue;
    long m = 1;
    Elem x = u;
    while (pos[x] < 0) {
      x = ring.mul(x, u);
      ++m;
    }
    std::vector<long> rel = exps[pos[x]];
    for (auto& e : rel) e = -e;
    rel.push_back(m);
    rels.push_back(rel);
    old_gens.push_back(u);
    const std::size_t s = elems.size();
    for (auto& e : exps) e.push_back(0);
    Elem ui = ring.one();
    for (long i = 1; i < m; ++i) {
      ui = ring.mul(ui, u);
      for (std::size_t h = 0; h < s; ++h) {
        Elem y = ring.mul(elems[h], ui);
        pos[y] = static_cast<int>(elems.size());
        elems.push_back(y);
        auto e = exps[h];
        e.back() = i;
        exps.push_back(std::move(e));
      }
    }
  }
  const int k = static_cast<int>(old_gens.size());
  IntMatrix r(k, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < static_cast<int>(rels[j].size()); ++i) r(i, j) = rels[j][i];
  SmithForm sf = smith_normal_form(r, {.left = true, .right = false});
  std::vector<long> old_orders;
  for (Elem g : old_gens) {
    long o = 1;
    for (Elem x = g; x != ring.one(); x = ring.mul(x, g)) ++o;
    old_orders.push_back(o);
  }
  for (int i = 0; i < k; ++i) {
    if (sf.diagonal[i] == 1) continue;
    Elem g = ring.one();
    for (int l = 0; l < k; ++l) {
      BigInt e = sf.Uinv(l, i);
      mpz_fdiv_r_ui(e.get_mpz_t(), e.get_mpz_t(), old_orders[l]);
      g = ring.mul(g, ring.pow(old_gens[l], e.get_si()));
    }
    gens_.push_back(g);
    orders_.push_back(sf.diagonal[i].get_si());
  }
  dlog_index_.assign(n, -1);
  std::vector<long> e(gens_.size(), 0);
  while (true) {
    Elem x = exp(e);
    if (dlog_index_[x] >= 0) throw std::logic_error("unit group generators are not independent");
    dlog_index_[x] = static_cast<int>(dlog_.size());
    dlog_.push_back(e);
    std::size_t i = 0;
    for (; i < e.size(); ++i) {
      if (++e[i] < orders_[i]) break;
      e[i] = 0;
    }
    if (i == e.size()) break;
  }
  if (dlog_.size() != us.size()) throw std::logic_error("unit group structure does not cover all units");
}

std::vector<long> UnitGroup::dlog(Elem u) const {
  if (u < 0 || u >= ring_->size() || dlog_index_[u] < 0)
    throw MathError(ring_->render(u) + " is not a unit");
  return dlog_[dlog_index_[u]];
}

Elem UnitGroup::exp(const std::vector<long>& e) const {
  Elem x = ring_->one();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    long k = ((e[i] % orders_[i]) + orders_[i]) % orders_[i];
    x = ring_->mul(x, ring_->pow(gens_[i], k));
  }
  return x;
}

FpAbelianGroup UnitGroup::as_group() const {
  std::vector<BigInt> t;
  for (long o : orders_) t.emplace_back(o);
  return FpAbelianGroup::from_invariants(0, t);
}

Vec UnitGroup::coords(Elem u) const {
  auto e = dlog(u);
  Vec v;
  for (long x : e) v.emplace_back(x);
  return v;
}

UnitGroup unit_group(const FiniteRing& ring) { return UnitGroup(ring); }

namespace {

std::vector<Elem> combine_factorwise(const FiniteRing& ring,
                                     const std::vector<std::vector<Elem>>& per_factor) {
  std::vector<Elem> out;
  std::vector<std::size_t> idx(per_factor.size(), 0);
  for (const auto& f : per_factor)
    if (f.empty()) return out;
  while (true) {
    std::vector<Elem> c(per_factor.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = per_factor[k][idx[k]];
    out.push_back(ring.from_components(c));
    std::size_t k = per_factor.size();
    while (k > 0) {
      --k;
      if (++idx[k] < per_factor[k].size()) break;
      idx[k] = 0;
      if (k == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

}  // namespace

std::vector<Elem> mu2(const FiniteRing& ring) {
  if (ring.spec().kind == RingKind::Prod) {
    std::vector<std::vector<Elem>> per;
    for (const auto& f : ring.factors()) per.push_back(mu2(f));
    return combine_factorwise(ring, per);
  }
  std::vector<Elem> out;
  for (Elem u : ring.units())
    if (ring.mul(u, u) == ring.one()) out.push_back(u);
  return out;
}

std::vector<Elem> w_set(const FiniteRing& ring) {
  if (ring.spec().kind == RingKind::Prod) {
    std::vector<std::vector<Elem>> per;
    for (const auto& f : ring.factors()) per.push_back(w_set(f));
    return combine_factorwise(ring, per);
  }
  std::vector<Elem> out;
  for (Elem a : ring.units())
    if (ring.is_unit(ring.sub(ring.one(), a))) out.push_back(a);
  return out;
}

FpAbelianGroup h0_units_on_A(const FiniteRing& ring) {
  const auto& basis = ring.additive_basis();
  const int g = static_cast<int>(basis.size());
  std::vector<Vec> rels;
  for (int i = 0; i < g; ++i) {
    Vec v = zero_vec(g);
    v[i] = ring.additive_orders()[i];
    rels.push_back(std::move(v));
  }
  std::set<Elem> factors;
  for (Elem a : ring.units()) factors.insert(ring.sub(ring.mul(a, a), ring.one()));
  for (Elem s : factors)
    for (Elem b : basis) {
      auto c = ring.additive_coords(ring.mul(s, b));
      Vec v(c.begin(), c.end());
      if (!is_zero(v)) rels.push_back(std::move(v));
    }
  return FpAbelianGroup(g, IntMatrix::from_columns(g, rels));
}

}  // namespace rsc
