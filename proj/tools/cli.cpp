#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "report.hpp"
#include "rsc/errors.hpp"
#include "rsc/homology.hpp"
#include "rsc/scissors.hpp"
#include "rsc/unimod.hpp"
#include "verify.hpp"

namespace rsc::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string ring, rings;
  bool json = false, csv = false;
  std::optional<int> max_group_order;
  bool override_caps = false;
  int max_degree = 3;
  std::string cache_dir;
  bool no_cache = false;
  std::string certificate;
  int jobs = 0;
  int dim = 1;
  std::string group = "SL2", sub = "SM2";
  std::string target;
};

struct RingCtx {
  FiniteRing r;
  UnitGroup u;
  SquareClassGroup g;
  explicit RingCtx(const std::string& spec) : r(spec), u(r), g(u) {}
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {
    if (o.max_degree < 1 || o.max_degree > 4) throw UsageError("--max-degree must be between 1 and 4");
    if (o.dim < 0) throw UsageError("--dim must be nonnegative");
    if (o.max_group_order) caps_.h2_order = caps_.h3_order = *o.max_group_order;
    caps_.override = o.override_caps;
    if (!o.no_cache) {
      std::filesystem::path dir = o.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(o.cache_dir);
      if (!dir.empty()) {
        try {
          cache_ = std::make_unique<DiskCache>(dir);
          caps_.cache = cache_.get();
        } catch (const std::exception& e) {
          err_ << "warning: cache disabled: " << e.what() << "\n";
        }
      }
    }
  }

  std::vector<std::string> rings() const {
    std::vector<std::string> out;
    if (!o_.ring.empty()) out.push_back(o_.ring);
    if (!o_.rings.empty())
      for (auto& r : split_ring_list(o_.rings)) out.push_back(r);
    return out;
  }

  std::string single_ring() const {
    auto r = rings();
    if (r.size() != 1) throw UsageError("this command takes exactly one ring (--ring)");
    parse_ring_spec(r[0]);
    return r[0];
  }

  int group(const FpAbelianGroup& g) {
    if (o_.json)
      out_ << g.to_json().dump() << "\n";
    else
      out_ << g.to_string() << "\n";
    return kOk;
  }

  int object(const json& j, const std::vector<std::pair<std::string, std::string>>& human) {
    if (o_.json) {
      out_ << j.dump() << "\n";
    } else {
      for (const auto& [k, v] : human) out_ << k << ": " << v << "\n";
    }
    return kOk;
  }

  int report(const Report& rep) {
    if (o_.json)
      out_ << rep.to_json().dump() << "\n";
    else if (o_.csv)
      rep.write_csv(out_);
    else
      rep.write_human(out_);
    return rep.failed() ? kFailed : kOk;
  }

  int ring_info() {
    RingCtx c(single_ring());
    json mu = json::array();
    std::string mu_text;
    for (Elem b : mu2(c.r)) {
      mu.push_back(c.r.render(b));
      mu_text += (mu_text.empty() ? "" : ", ") + c.r.render(b);
    }
    long w = static_cast<long>(w_set(c.r).size());
    json j{{"ring", c.r.name()},       {"size", c.r.size()},          {"characteristic", c.r.characteristic()},
           {"field", c.r.is_field()},  {"local", c.r.is_local()},     {"units", c.u.order()},
           {"square_classes", c.g.order()}, {"w_size", w},            {"mu2", mu}};
    return object(j, {{"ring", c.r.name()},
                      {"size", std::to_string(c.r.size())},
                      {"characteristic", std::to_string(c.r.characteristic())},
                      {"field", c.r.is_field() ? "yes" : "no"},
                      {"local", c.r.is_local() ? "yes" : "no"},
                      {"units", std::to_string(c.u.order())},
                      {"square classes", std::to_string(c.g.order())},
                      {"|W_A|", std::to_string(w)},
                      {"mu_2", "{" + mu_text + "}"}});
  }

  int units() {
    RingCtx c(single_ring());
    json gens = json::array(), classes = json::array();
    std::string gen_text, class_text;
    for (Elem e : c.u.generators()) {
      gens.push_back(c.r.render(e));
      gen_text += (gen_text.empty() ? "" : ", ") + c.r.render(e);
    }
    for (int k = 0; k < c.g.order(); ++k) {
      classes.push_back(c.g.name(k));
      class_text += (class_text.empty() ? "" : ", ") + c.g.name(k);
    }
    FpAbelianGroup a = c.u.as_group();
    json j{{"group", a.to_json()}, {"generators", gens}, {"orders", c.u.orders()}, {"square_classes", classes}};
    return object(j, {{"A*", a.to_string()}, {"generators", gen_text}, {"G_A", class_text}});
  }

  int ge2() {
    RingCtx c(single_ring());
    Ge2RelationReport rep = verify_ge2_relations(c.r);
    bool ge2 = is_ge2_ring(c.r);
    long order = sl2_order(c.r);
    std::size_t gens = minimal_e_generators(c.r).size();
    json j{{"relations", {{"ok", rep.ok()},
                          {"exhaustive", rep.exhaustive},
                          {"checked", {rep.checked[0], rep.checked[1], rep.checked[2]}},
                          {"counterexamples", rep.counterexamples}}},
           {"ge2", ge2},
           {"sl2_order", order},
           {"e_generators", gens}};
    object(j, {{"relations", rep.ok() ? "hold" : "FAIL: " + rep.counterexamples.front()},
               {"E_2 = SL_2", ge2 ? "yes" : "no"},
               {"|SL_2|", std::to_string(order)},
               {"E(x) generators", std::to_string(gens)}});
    return rep.ok() && ge2 ? kOk : kFailed;
  }

  int complex_homology_cmd() {
    RingCtx c(single_ring());
    if (o_.dim + 1 > o_.max_degree)
      throw UsageError("H_" + std::to_string(o_.dim) + "(X) needs --max-degree >= " + std::to_string(o_.dim + 1));
    UnimodularComplex x(c.r, o_.dim + 1);
    return group(complex_homology(x, o_.dim));
  }

  int complex_orbits() {
    RingCtx c(single_ring());
    if (o_.dim > o_.max_degree) throw UsageError("--dim exceeds --max-degree");
    UnimodularComplex x(c.r, std::max(o_.dim, 1));
    OrbitDecomposition od = orbit_decomposition(x, o_.dim, sl2_generators(c.r));
    json reps = json::array();
    std::string text;
    for (long idx : od.reps) {
      reps.push_back(x.render(o_.dim, idx));
      text += (text.empty() ? "" : " ") + x.render(o_.dim, idx);
    }
    json j{{"degree", o_.dim}, {"orbits", od.count()}, {"sizes", od.sizes}, {"representatives", reps}};
    return object(j, {{"orbits", std::to_string(od.count())}, {"representatives", text}});
  }

  int complex_ranks() {
    RingCtx c(single_ring());
    UnimodularComplex x(c.r, o_.max_degree);
    std::vector<long> ranks;
    std::string text;
    for (int n = 0; n <= x.top(); ++n) {
      ranks.push_back(x.rank(n));
      text += (text.empty() ? "" : " ") + std::to_string(x.rank(n));
    }
    return object(json{{"ranks", ranks}}, {{"ranks", text}});
  }

  int rp() {
    RingCtx c(single_ring());
    RpBar rp = rp_bar(c.g);
    if (o_.csv) {
      out_ << relations_csv(rp);
      return kOk;
    }
    return group(rp.group);
  }

  int rp_direct() {
    RingCtx c(single_ring());
    UnimodularComplex x(c.r, 3);
    DirectModels dm(x, c.g, sl2_generators(c.r));
    ComparisonReport rep = compare_presented_direct(rp_bar(c.g), witt(c.g), dm);
    json cmp = json::array();
    std::vector<std::pair<std::string, std::string>> human{{"RP", dm.rp().to_string()}, {"GW", dm.gw().to_string()}};
    for (const auto& e : rep.entries) {
      cmp.push_back({{"name", e.name},
                     {"well_defined", e.well_defined},
                     {"surjective", e.surjective},
                     {"injective", e.injective},
                     {"source", e.source},
                     {"target", e.target}});
      std::string flags = std::string(e.well_defined ? "well defined" : "NOT well defined") +
                          (e.surjective ? ", surjective" : "") + (e.injective ? ", injective" : "");
      human.emplace_back(e.name, e.source + " -> " + e.target + " (" + flags + ")");
    }
    object(json{{"rp", dm.rp().to_json()}, {"gw", dm.gw().to_json()}, {"comparisons", cmp}}, human);
    for (const auto& e : rep.entries)
      if (!e.well_defined) return kFailed;
    return kOk;
  }

  int gw() {
    RingCtx c(single_ring());
    return group(witt(c.g).gw);
  }

  int witt_cmd() {
    RingCtx c(single_ring());
    return group(witt(c.g).w);
  }

  int k1mw_cmd() {
    RingCtx c(single_ring());
    MilnorWittK1 mw = k1mw(c.g, witt(c.g));
    group(mw.k.group);
    return mw.mw1_exact && mw.mw2_exact ? kOk : kFailed;
  }

  int homology() {
    FiniteRing r(single_ring());
    GroupTable g = enumerate_group(r, parse_group_kind(o_.group));
    check_homology_caps(g.order(), o_.dim, caps_);
    BarComplex c(g, o_.dim + 1);
    FpAbelianGroup h = homology_from_boundaries(c.rank(o_.dim), c.boundary(o_.dim), c.boundary(o_.dim + 1), caps_.cache);
    if (!o_.certificate.empty())
      write_certificate(r, g.name(), c.rank(o_.dim), c.boundary(o_.dim), c.boundary(o_.dim + 1), h);
    return group(h);
  }

  int rel_homology() {
    FiniteRing r(single_ring());
    GroupTable g = enumerate_group(r, parse_group_kind(o_.group));
    GroupTable sub = enumerate_group(r, parse_group_kind(o_.sub));
    try {
      embedding(sub, g);
    } catch (const MathError&) {
      throw UsageError(sub.name() + " is not a subgroup of " + g.name());
    }
    PairComplex p(g, sub, o_.dim + 1, caps_);
    FpAbelianGroup h = p.relative(o_.dim);
    if (!o_.certificate.empty()) {
      long rank = static_cast<long>(p.quotient_cells(o_.dim).size());
      write_certificate(r, g.name() + "/" + sub.name(), rank, p.quotient_boundary(o_.dim),
                        p.quotient_boundary(o_.dim + 1), h);
    }
    return group(h);
  }

  int s_groups() {
    FiniteRing r(single_ring());
    SGroupReport rep = s_group(r, o_.dim, caps_);
    object(json{{"n", rep.n}, {"s", rep.s.to_json()}, {"h_b", rep.hb.to_json()}, {"h_t", rep.ht.to_json()},
                {"split", rep.split}},
           {{"S_" + std::to_string(rep.n), rep.s.to_string()},
            {"H_" + std::to_string(rep.n) + "(B)", rep.hb.to_string()},
            {"H_" + std::to_string(rep.n) + "(T)", rep.ht.to_string()},
            {"split", rep.split ? "yes" : "no"}});
    return rep.split ? kOk : kFailed;
  }

  int sm2() {
    std::string spec = single_ring();
    FiniteRing r(spec);
    Report rep;
    rep.command = "sm2";
    rep.rings = {spec};
    for (auto& c : sm2_checks(r, caps_)) rep.checks.push_back({spec, std::move(c)});
    return report(rep);
  }

  int verify_cmd() {
    if (o_.target.empty()) throw UsageError("verify needs a suite or check name");
    if (!is_verify_target(o_.target)) {
      std::string known;
      for (const auto& n : suite_names()) known += " " + n;
      for (const auto& n : check_names()) known += " " + n;
      throw UsageError("unknown suite or check '" + o_.target + "'; known:" + known);
    }
    VerifyOptions vo;
    vo.caps = caps_;
    vo.max_degree = o_.max_degree;
    vo.jobs = o_.jobs;
    return report(verify(o_.target, rings(), vo));
  }

 private:
  static json matrix_json(const SparseMatrix& m) {
    json entries = json::array();
    for (int c = 0; c < m.cols(); ++c)
      for (const auto& [row, v] : m.column(c)) entries.push_back({row, c, v});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
  }

  // Boundaries around degree n and their invariant factors, enough to recompute H_n independently.
  void write_certificate(const FiniteRing& r, const std::string& group_name, long rank, const SparseMatrix& dn,
                         const SparseMatrix& dn1, const FpAbelianGroup& h) {
    auto inv_json = [&](const SparseMatrix& m) {
      SparseInvariants inv = cached_invariant_factors(m, caps_.cache);
      json nonunit = json::array();
      for (const auto& d : inv.nonunit) nonunit.push_back(d.get_str());
      return json{{"rank", inv.rank}, {"nonunit", nonunit}};
    };
    json j{{"version", kVersion},
           {"ring", r.name()},
           {"group", group_name},
           {"degree", o_.dim},
           {"chain_rank", rank},
           {"boundaries", {{"d_n", matrix_json(dn)}, {"d_n+1", matrix_json(dn1)}}},
           {"invariants", {{"d_n", inv_json(dn)}, {"d_n+1", inv_json(dn1)}}},
           {"homology", h.to_json()}};
    std::ofstream f(o_.certificate);
    f << j.dump() << "\n";
    if (!f) throw UsageError("cannot write certificate to " + o_.certificate);
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  HomologyOptions caps_;
  std::unique_ptr<DiskCache> cache_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Refined scissors congruence and low-degree homology of SL_2 over finite rings", "rsc"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--ring", o.ring, "ring spec: zmod:n, gf:q or prod:spec,spec,...");
  app.add_option("--rings", o.rings, "comma or semicolon separated ring specs; a prod: spec takes the rest of its list");
  app.add_flag("--json", o.json, "JSON output");
  app.add_flag("--csv", o.csv, "CSV output (rp relations, verify reports)");
  app.add_option("--max-group-order", o.max_group_order, "largest |G| for bar homology in degrees 2 and 3");
  app.add_flag("--override-caps", o.override_caps, "ignore the group order caps");
  app.add_option("--max-degree", o.max_degree, "top degree of the unimodular complex (1..4)");
  app.add_option("--cache-dir", o.cache_dir, "directory for cached invariant factors");
  app.add_flag("--no-cache", o.no_cache, "do not read or write the cache");
  app.add_option("--certificate", o.certificate, "write boundary matrices and invariants as JSON");
  app.add_option("--jobs", o.jobs, "worker threads for verify (0: all cores)");

  auto dim_opt = [&](CLI::App* s, const char* help) { s->add_option("--dim", o.dim, help); };
  auto* ring_cmd = app.add_subcommand("ring", "basic invariants of the ring");
  auto* units_cmd = app.add_subcommand("units", "unit group and square classes");
  auto* ge2_cmd = app.add_subcommand("ge2", "E(x) relations and E_2 = SL_2");
  auto* complex_cmd = app.add_subcommand("complex", "the complex of unimodular lines");
  complex_cmd->require_subcommand(1);
  auto* complex_h = complex_cmd->add_subcommand("homology", "H_n(X)");
  dim_opt(complex_h, "degree n");
  auto* complex_o = complex_cmd->add_subcommand("orbits", "SL_2 orbits on X_n");
  dim_opt(complex_o, "degree n");
  auto* complex_r = complex_cmd->add_subcommand("ranks", "ranks of X_0 .. X_top");
  auto* rp_cmd = app.add_subcommand("rp", "refined scissors congruence group RP-bar");
  auto* rpd_cmd = app.add_subcommand("rp-direct", "RP and GW from the complex, compared with the presentations");
  auto* gw_cmd = app.add_subcommand("gw", "Grothendieck-Witt group GW-bar");
  auto* witt_cmd = app.add_subcommand("witt", "Witt group W");
  auto* k1mw_cmd = app.add_subcommand("k1mw", "Milnor-Witt K_1");
  auto* hom_cmd = app.add_subcommand("homology", "H_n(G) for G in SL2, E2, SM2, T, B");
  hom_cmd->add_option("--group", o.group, "group");
  dim_opt(hom_cmd, "degree n <= 3");
  auto* rel_cmd = app.add_subcommand("rel-homology", "H_n(G, G') from the quotient of bar complexes");
  rel_cmd->add_option("--group", o.group, "ambient group");
  rel_cmd->add_option("--sub", o.sub, "subgroup");
  dim_opt(rel_cmd, "degree n <= 2");
  auto* s_cmd = app.add_subcommand("s-groups", "S_n = H_n(B, T) and the splitting of H_n(B)");
  dim_opt(s_cmd, "degree n");
  auto* sm2_cmd = app.add_subcommand("sm2", "H_1 and H_2 of the monomial group");
  auto* verify_cmd = app.add_subcommand("verify", "run a check suite");
  verify_cmd->add_option("name", o.target, "suite (ge2, scissors, witt, homology, all) or check name");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    Runner run(o, out, err);
    if (*ring_cmd) return run.ring_info();
    if (*units_cmd) return run.units();
    if (*ge2_cmd) return run.ge2();
    if (*complex_h) return run.complex_homology_cmd();
    if (*complex_o) return run.complex_orbits();
    if (*complex_r) return run.complex_ranks();
    if (*rp_cmd) return run.rp();
    if (*rpd_cmd) return run.rp_direct();
    if (*gw_cmd) return run.gw();
    if (*witt_cmd) return run.witt_cmd();
    if (*k1mw_cmd) return run.k1mw_cmd();
    if (*hom_cmd) return run.homology();
    if (*rel_cmd) return run.rel_homology();
    if (*s_cmd) return run.s_groups();
    if (*sm2_cmd) return run.sm2();
    if (*verify_cmd) return run.verify_cmd();
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace rsc::cli
