#include "verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <set>

#include "pool.hpp"
#include "rsc/errors.hpp"
#include "rsc/scissors.hpp"
#include "rsc/unimod.hpp"

namespace rsc::cli {

namespace {

struct RingCtx {
  FiniteRing r;
  UnitGroup u;
  SquareClassGroup g;
  explicit RingCtx(const std::string& spec) : r(spec), u(r), g(u) {}
};

using CheckFn = std::function<std::vector<Check>(const RingCtx&, const VerifyOptions&)>;

Check reported(std::string name, std::string detail) { return {std::move(name), Status::Reported, std::move(detail)}; }

// pass/fail when the theory guarantees the identity, reported otherwise
Check guarded(std::string name, bool guaranteed, bool ok, std::string detail) {
  if (guaranteed) return pass_or_fail(std::move(name), ok, std::move(detail));
  return reported(std::move(name), detail.empty() ? (ok ? "holds" : "does not hold") : (ok ? "holds; " : "does not hold; ") + detail);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Residue field size of a local ring: the maximal ideal is the set of non-units.
long residue_size(const FiniteRing& r) {
  long nonunits = r.size() - static_cast<long>(r.units().size());
  return r.size() / nonunits;
}

std::vector<Check> ge2_relations(const RingCtx& c, const VerifyOptions&) {
  Ge2RelationReport rep = verify_ge2_relations(c.r);
  std::string detail = rep.exhaustive ? "exhaustive" : "sampled";
  detail += ", " + std::to_string(rep.checked[0] + rep.checked[1] + rep.checked[2]) + " instances";
  if (!rep.ok()) detail += "; first counterexample " + rep.counterexamples.front();
  std::vector<Check> out{pass_or_fail("E(x) relations", rep.ok(), detail)};
  out.push_back(pass_or_fail("E_2 = SL_2", is_ge2_ring(c.r), "|SL_2| = " + std::to_string(sl2_order(c.r))));
  return out;
}

std::vector<Check> complex_checks(const RingCtx& c, const VerifyOptions& o) {
  UnimodularComplex x(c.r, o.max_degree);
  std::vector<Check> out;
  out.push_back(pass_or_fail("boundaries compose to zero", x.boundaries_compose_to_zero(),
                             "through degree " + std::to_string(o.max_degree)));
  bool commutes = true;
  for (const Mat2& g : sl2_generators(c.r)) commutes = commutes && x.action_commutes(g);
  out.push_back(pass_or_fail("SL_2 action commutes with the boundary", commutes));
  bool ge2 = is_ge2_ring(c.r);
  FpAbelianGroup h0 = complex_homology(x, 0);
  out.push_back(pass_or_fail("H~_0(X) = 0 iff E_2 = SL_2", h0.is_trivial() == ge2,
                             "H~_0 = " + h0.to_string() + ", E_2 = SL_2: " + yes_no(ge2)));
  if (x.top() >= 2) {
    FpAbelianGroup h1 = complex_homology(x, 1);
    out.push_back(guarded("H_1(X) = 0", c.r.is_local(), h1.is_trivial(), "H_1 = " + h1.to_string()));
  }
  return out;
}

constexpr long kStabilizerGroupCap = 5000;

std::vector<Check> orbit_checks(const RingCtx& c, const VerifyOptions&) {
  UnimodularComplex x(c.r, 3);
  std::vector<Mat2> gens = sl2_generators(c.r);
  const bool field = c.r.is_field();
  std::vector<Check> out;
  long x2 = static_cast<long>(orbit_decomposition(x, 2, gens).count());
  long x3 = static_cast<long>(orbit_decomposition(x, 3, gens).count());
  long w = static_cast<long>(w_set(c.r).size());
  out.push_back(guarded("|X_2/SL_2| = |G_A|", field, x2 == c.g.order(), std::to_string(x2) + " orbits"));
  out.push_back(guarded("|X_3/SL_2| = |G_A||W_A|", field, x3 == c.g.order() * w, std::to_string(x3) + " orbits"));
  if (sl2_order(c.r) > kStabilizerGroupCap) {
    out.push_back({"stabilizer of (∞,0,a) is mu_2", Status::SkippedHypothesis,
                   "over caps: |SL_2| > " + std::to_string(kStabilizerGroupCap)});
    return out;
  }
  GroupTable sl2 = enumerate_group(c.r, GroupKind::SL2);
  const LineSet& l = x.lines();
  std::set<Mat2> mu;
  for (Elem b : mu2(c.r)) mu.insert(Mat2{b, 0, 0, b});
  bool all = true;
  for (Elem a : c.r.units()) {
    std::set<Mat2> st;
    for (int i : stabilizer(x, 2, x.index_of({l.infinity(), l.zero(), l.point(a)}), sl2)) st.insert(sl2.matrix(i));
    all = all && st == mu;
  }
  out.push_back(guarded("stabilizer of (∞,0,a) is mu_2", field, all, {}));
  return out;
}

std::vector<Check> scissors_identities(const RingCtx& c, const VerifyOptions&) {
  RpBar rp = rp_bar(c.g);
  std::vector<Check> out;
  out.push_back(pass_or_fail("lambda is well defined on RP-bar", rp.lambda_ill_defined.empty(),
                             std::to_string(rp.lambda_ill_defined.size()) + " relations not killed"));
  bool lam = true, rp1 = true;
  for (Elem a : rp.w) {
    lam = lam && lambda_bar(rp, psi1_bar(rp, a)) == p_minus_one_plus(c.g) * bracket(c.g, a);
    rp1 = rp1 && in_rp1_bar(rp, g_elem(rp, a));
  }
  std::string n = std::to_string(rp.w.size()) + " values of a";
  out.push_back(pass_or_fail("lambda(psi1-bar(a)) = p_{-1}^+ <<a>>", lam, n));
  out.push_back(pass_or_fail("g(a) lies in RP-bar_1", rp1, n));
  out.push_back(reported("RP-bar", rp.group.to_string()));
  return out;
}

std::vector<Check> theta_checks(const RingCtx& c, const VerifyOptions&) {
  RpBar rp = rp_bar(c.g);
  ThetaMap th = theta_map(rp);
  std::vector<Check> out;
  out.push_back(pass_or_fail("Theta is well defined", th.well_defined(),
                             std::to_string(th.ill_defined.size()) + " relations not killed"));
  bool doubles = true;
  for (Elem a : rp.w) {
    Vec v = th.symbol_value(a);
    for (auto& e : v) e *= 2;
    doubles = doubles && th.target.group.equal(th.apply(rp.pres.flatten(g_elem(rp, a))), v);
  }
  out.push_back(pass_or_fail("Theta(g(a)) = 2 (a ^ (1-a), -a . (1-a))", doubles));
  return out;
}

// GW of a finite field from the classical Witt relation <a> + <b> = <a+b> + <ab(a+b)>.
FpAbelianGroup classical_gw(const RingCtx& c) {
  const int n = c.g.order();
  std::vector<Vec> rels;
  for (Elem a : c.r.units())
    for (Elem b : c.r.units()) {
      Elem s = c.r.add(a, b);
      if (!c.r.is_unit(s)) continue;
      Vec v = zero_vec(n);
      v[c.g.class_of(a)] += 1;
      v[c.g.class_of(b)] += 1;
      v[c.g.class_of(s)] -= 1;
      v[c.g.class_of(c.r.mul(c.r.mul(a, b), s))] -= 1;
      rels.push_back(v);
    }
  return FpAbelianGroup(n, IntMatrix::from_columns(n, rels));
}

std::vector<Check> witt_groups(const RingCtx& c, const VerifyOptions&) {
  WittData wd = witt(c.g);
  std::vector<Check> out;
  out.push_back(pass_or_fail("I-bar = ker epsilon", wd.i_is_kernel));
  out.push_back(reported("GW-bar", wd.gw.to_string()));
  out.push_back(reported("W", wd.w.to_string()));
  if (c.r.is_field() && c.r.characteristic() != 2) {
    FpAbelianGroup classical = classical_gw(c);
    out.push_back(pass_or_fail("GW-bar agrees with the classical GW", wd.gw.isomorphic_to(classical),
                               "classical " + classical.to_string()));
  }
  return out;
}

std::vector<Check> milnor_witt(const RingCtx& c, const VerifyOptions&) {
  MilnorWittK1 mw = k1mw(c.g, witt(c.g));
  return {pass_or_fail("0 -> I^2 -> K_1^MW -> A* -> 0 exact", mw.mw1_exact),
          pass_or_fail("0 -> 2A* -> K_1^MW -> I -> 0 exact", mw.mw2_exact), reported("K_1^MW", mw.k.group.to_string())};
}

std::vector<Check> z2_checks(const RingCtx& c, const VerifyOptions&) {
  Z2Kernel k = z2_kernel(c.g);
  return {guarded("|ker(G_A (x) mu_2 -> A* ^ A*)| <= 2", c.r.is_field(), k.order() <= 2,
                  "order " + k.order().get_str())};
}

// Like to_string, with a free part of rank k > 1 written Z^k.
std::string brief(const FpAbelianGroup& g) {
  if (g.free_rank() <= 1) return g.to_string();
  std::string out;
  for (const auto& d : g.torsion()) out += "Z/" + d.get_str() + " ⊕ ";
  return out + "Z^" + std::to_string(g.free_rank());
}

struct Exactness {
  FpAbelianGroup h[3];
  bool below2 = false, below3 = false;
};

Exactness complex_exactness(const UnimodularComplex& x) {
  Exactness e;
  for (int k = 0; k < 3; ++k) e.h[k] = complex_homology(x, k);
  e.below2 = e.h[0].is_trivial() && e.h[1].is_trivial();
  e.below3 = e.below2 && e.h[2].is_trivial();
  return e;
}

std::vector<Check> comparison_checks(const RingCtx& c, const VerifyOptions&) {
  UnimodularComplex x(c.r, 3);
  Exactness ex = complex_exactness(x);
  DirectModels dm(x, c.g, sl2_generators(c.r));
  RpBar rp = rp_bar(c.g);
  ComparisonReport rep = compare_presented_direct(rp, witt(c.g), dm);
  std::string exact = "H~_0, H_1, H_2 of X: " + brief(ex.h[0]) + ", " + brief(ex.h[1]) + ", " + brief(ex.h[2]);
  std::vector<Check> out;
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const ComparisonEntry& e = rep.entries[i];
    const bool surj_guaranteed = i == 0 ? ex.below3 : ex.below2;
    const bool inj_guaranteed = i == 2 && ex.below3;
    out.push_back(pass_or_fail(e.name + " well defined", e.well_defined, e.source + " -> " + e.target));
    out.push_back(guarded(e.name + " surjective", surj_guaranteed, e.surjective, exact));
    out.push_back(guarded(e.name + " injective", inj_guaranteed, e.injective, exact));
  }
  return out;
}

std::vector<Check> psi1_squares(const RingCtx& c, const VerifyOptions&) {
  UnimodularComplex x(c.r, 3);
  DirectModels dm(x, c.g, sl2_generators(c.r));
  bool all = true;
  std::string bad;
  for (Elem a : c.r.units())
    if (!dm.rp().is_zero(dm.psi1(c.r.mul(a, a)))) {
      all = false;
      if (bad.empty()) bad = "nonzero at a = " + c.r.render(a);
    }
  return {guarded("psi1(a^2) = 0 in RP", c.r.is_field(), all, bad)};
}

std::vector<Check> sm2_group_checks(const RingCtx& c, const VerifyOptions& o) { return sm2_checks(c.r, o.caps); }

std::vector<Check> s_group_checks(const RingCtx& c, const VerifyOptions& o) {
  std::vector<Check> out;
  for (int n = 1; n <= 2; ++n) {
    std::string name = "H_" + std::to_string(n) + "(B) = H_" + std::to_string(n) + "(T) + S_" + std::to_string(n);
    try {
      SGroupReport rep = s_group(c.r, n, o.caps);
      out.push_back(pass_or_fail(name, rep.split, "S_" + std::to_string(n) + " = " + rep.s.to_string()));
      if (n == 1) {
        FpAbelianGroup h0 = h0_units_on_A(c.r);
        out.push_back(pass_or_fail("S_1 = A/<(a^2-1)b>", rep.s.isomorphic_to(h0), h0.to_string()));
      }
    } catch (const CapExceeded& e) {
      out.push_back({name, Status::SkippedHypothesis, std::string("over caps: ") + e.what()});
    }
  }
  return out;
}

std::vector<Check> x_class_checks(const RingCtx& c, const VerifyOptions& o) {
  GroupTable b = enumerate_group(c.r, GroupKind::B);
  GroupHomology hb(b, 2, o.caps);
  const FpAbelianGroup& h2 = hb.h(2);
  bool twice = true, sign = true, vanish = true;
  for (Elem bb : mu2(c.r))
    for (Elem a = 0; a < c.r.size(); ++a) {
      Vec x = x_class(c.r, hb, a, bb);
      Vec y = x_class(c.r, hb, c.r.neg(a), bb);
      Vec x2 = x;
      for (auto& e : x2) e *= 2;
      twice = twice && h2.is_zero(x2);
      sign = sign && h2.equal(x, y);
      vanish = vanish && h2.is_zero(x);
    }
  const bool guaranteed = c.r.is_unit(c.r.from_int(2)) || c.r.is_field() ||
                          (c.r.is_local() && residue_size(c.r) >= 3) || mu2(c.r).size() == 1;
  return {pass_or_fail("2 x_a = 0", twice), pass_or_fail("x_a = x_{-a}", sign),
          guarded("x_a = 0", guaranteed, vanish, "H_2(B) = " + h2.to_string())};
}

std::vector<Check> relative_checks(const RingCtx& c, const VerifyOptions& o) {
  RelativeSl2Report rep = relative_sl2_sm2(c.r, 2, o.caps);
  std::vector<Check> out;
  out.push_back(pass_or_fail("long exact sequence of (SL_2, SM_2) is exact", rep.les.all_exact(),
                             std::to_string(rep.les.positions.size()) + " positions"));
  for (const Hypothesis& h : rep.hypotheses) {
    std::string v = h.holds ? (*h.holds ? "holds" : "fails") : "unknown";
    out.push_back(reported("hypothesis: " + h.name, h.detail.empty() ? v : v + "; " + h.detail));
  }
  out.push_back(rep.conclusion);
  return out;
}

struct Target {
  std::string name;
  CheckFn fn;
};

const std::vector<Target>& targets() {
  static const std::vector<Target> t{
      {"ge2-relations", ge2_relations}, {"complex", complex_checks},       {"orbits", orbit_checks},
      {"scissors-identities", scissors_identities}, {"theta", theta_checks}, {"witt-groups", witt_groups},
      {"milnor-witt", milnor_witt},     {"z2-kernel", z2_checks},          {"comparison", comparison_checks},
      {"psi1-squares", psi1_squares},   {"sm2", sm2_group_checks},         {"s-groups", s_group_checks},
      {"x-classes", x_class_checks},    {"relative-sl2", relative_checks},
  };
  return t;
}

const std::map<std::string, std::vector<std::string>>& suites() {
  static const std::map<std::string, std::vector<std::string>> s{
      {"ge2", {"ge2-relations", "complex", "orbits"}},
      {"scissors", {"scissors-identities", "theta"}},
      {"witt", {"witt-groups", "milnor-witt", "z2-kernel", "comparison", "psi1-squares"}},
      {"homology", {"sm2", "s-groups", "x-classes", "relative-sl2"}},
  };
  return s;
}

std::vector<Check> run_target(const Target& t, const std::string& ring, const VerifyOptions& o) {
  try {
    RingCtx c(ring);
    return t.fn(c, o);
  } catch (const CapExceeded& e) {
    return {{t.name, Status::SkippedHypothesis, std::string("over caps: ") + e.what()}};
  } catch (const std::exception& e) {
    return {{t.name, Status::Fail, std::string("error: ") + e.what()}};
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"ge2", "scissors", "witt", "homology", "all"};
  return n;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const auto& t : targets()) v.push_back(t.name);
    return v;
  }();
  return n;
}

bool is_verify_target(const std::string& name) {
  for (const auto& s : suite_names())
    if (s == name) return true;
  for (const auto& s : check_names())
    if (s == name) return true;
  return false;
}

Report verify(const std::string& name, const std::vector<std::string>& rings, const VerifyOptions& opts) {
  if (!is_verify_target(name)) throw UsageError("unknown suite or check: " + name);
  if (rings.empty()) throw UsageError("verify needs --ring or --rings");
  for (const auto& r : rings) parse_ring_spec(r);

  std::vector<const Target*> chosen;
  auto add = [&](const std::string& n) {
    for (const auto& t : targets())
      if (t.name == n) chosen.push_back(&t);
  };
  if (name == "all") {
    for (const auto& s : {"ge2", "scissors", "witt", "homology"})
      for (const auto& n : suites().at(s)) add(n);
  } else if (suites().count(name)) {
    for (const auto& n : suites().at(name)) add(n);
  } else {
    add(name);
  }

  auto start = std::chrono::steady_clock::now();
  const std::size_t per_ring = chosen.size();
  auto results = parallel_map<std::vector<Check>>(rings.size() * per_ring, opts.jobs, [&](std::size_t i) {
    return run_target(*chosen[i % per_ring], rings[i / per_ring], opts);
  });

  Report rep;
  rep.command = "verify " + name;
  rep.rings = rings;
  for (std::size_t i = 0; i < results.size(); ++i)
    for (auto& c : results[i]) rep.checks.push_back({rings[i / per_ring], std::move(c)});
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<std::string> split_ring_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    std::string chunk = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    std::size_t p = 0;
    while (p < chunk.size()) {
      if (chunk.compare(p, 5, "prod:") == 0) {
        out.push_back(chunk.substr(p));
        break;
      }
      std::size_t comma = chunk.find(',', p);
      std::string item = chunk.substr(p, comma == std::string::npos ? std::string::npos : comma - p);
      if (!item.empty()) out.push_back(item);
      if (comma == std::string::npos) break;
      p = comma + 1;
    }
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return out;
}

}  // namespace rsc::cli
