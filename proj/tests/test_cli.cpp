#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cache.hpp"
#include "cli.hpp"
#include "pool.hpp"
#include "report.hpp"
#include "rsc/homology.hpp"
#include "support.hpp"
#include "verify.hpp"

using namespace rsc;
using namespace rsc::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result rsc_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  args.push_back("--no-cache");
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int n = 0;
    path = fs::temp_directory_path() / ("rsc-test-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

SparseMatrix random_sparse(std::mt19937& rng, int rows, int cols) {
  std::uniform_int_distribution<int> val(-3, 3);
  SparseMatrix m(rows);
  for (int c = 0; c < cols; ++c) {
    SparseVec v;
    for (int r = 0; r < rows; ++r)
      if (rng() % 3 == 0) v.emplace_back(r, val(rng));
    m.add_column(canonical_sparse(v));
  }
  return m;
}

// invariant factors > 1 of a dense matrix, for comparison with the sparse path
std::vector<long> dense_nonunit(const IntMatrix& m) {
  std::vector<long> out;
  if (m.empty()) return out;
  for (const auto& d : smith_normal_form(m).diagonal)
    if (d > 1) out.push_back(d.get_si());
  return out;
}

}  // namespace

TEST_CASE("documented command examples") {
  Result w = rsc_run({"witt", "--ring", "gf:3", "--json"});
  CHECK(w.code == kOk);
  CHECK(w.out == "{\"free_rank\":0,\"torsion\":[4]}\n");

  Result p = rsc_run({"verify", "psi1-squares", "--ring", "gf:5"});
  CHECK(p.code == kOk);
  CHECK(p.out.find("[pass] gf:5: psi1(a^2) = 0 in RP") != std::string::npos);

  Result h = rsc_run({"complex", "homology", "--ring", "gf:4", "--dim", "1", "--json"});
  CHECK(h.code == kOk);
  CHECK(h.out == "{\"free_rank\":0,\"torsion\":[]}\n");

  Result s = rsc_run({"verify", "scissors", "--rings", "prod:gf:5,gf:4,gf:4"});
  CHECK(s.code == kOk);
  CHECK(s.out.find("prod:gf:5,gf:4,gf:4") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(rsc_run({"verify", "bogus", "--ring", "gf:3"}).code == kUsage);
  CHECK(rsc_run({"verify", "--ring", "gf:3"}).code == kUsage);
  CHECK(rsc_run({"witt", "--ring", "gf:6"}).code == kUsage);
  CHECK(rsc_run({"witt"}).code == kUsage);
  CHECK(rsc_run({"witt", "--ring", "gf:3", "--frobnicate"}).code == kUsage);
  CHECK(rsc_run({}).code == kUsage);
  CHECK(rsc_run({"--help"}).code == kOk);
  CHECK(rsc_run({"ring", "--ring", "gf:3", "--max-degree", "5"}).code == kUsage);
  CHECK(rsc_run({"homology", "--ring", "gf:3", "--group", "GL2"}).code == kUsage);
  CHECK(rsc_run({"homology", "--ring", "gf:3", "--dim", "4"}).code == kUsage);
  CHECK(rsc_run({"homology", "--ring", "gf:5", "--group", "SL2", "--dim", "3"}).code == kCapExceeded);
  CHECK(rsc_run({"rel-homology", "--ring", "gf:3", "--group", "T", "--sub", "B"}).code == kUsage);
  CHECK(rsc_run({"complex", "homology", "--ring", "gf:3", "--dim", "3"}).code == kUsage);
}

TEST_CASE("single-ring commands") {
  json ring = json::parse(rsc_run({"ring", "--ring", "gf:9", "--json"}).out);
  CHECK(ring["size"] == 9);
  CHECK(ring["units"] == 8);
  CHECK(ring["square_classes"] == 2);
  CHECK(ring["field"] == true);
  json units = json::parse(rsc_run({"units", "--ring", "zmod:8", "--json"}).out);
  CHECK(units["group"] == json::parse(R"({"free_rank":0,"torsion":[2,2]})"));
  CHECK(rsc_run({"gw", "--ring", "gf:5"}).out == "Z/2 ⊕ Z\n");
  CHECK(rsc_run({"rp", "--ring", "gf:4"}).out == "Z/5\n");
  CHECK(rsc_run({"k1mw", "--ring", "gf:5"}).out == "Z/4\n");
  CHECK(rsc_run({"homology", "--ring", "gf:5", "--group", "SM2", "--dim", "3"}).out == "Z/8\n");
  CHECK(rsc_run({"rel-homology", "--ring", "gf:3", "--group", "B", "--sub", "T", "--dim", "1"}).out == "Z/3\n");
  Result s = rsc_run({"s-groups", "--ring", "gf:7", "--dim", "1", "--json"});
  CHECK(s.code == kOk);
  CHECK(json::parse(s.out)["s"]["torsion"].empty());
  CHECK(rsc_run({"ge2", "--ring", "zmod:9"}).code == kOk);
  CHECK(rsc_run({"complex", "orbits", "--ring", "gf:5", "--dim", "2"}).out.find("orbits: 2") == 0);
  Result rd = rsc_run({"rp-direct", "--ring", "gf:5", "--json"});
  CHECK(rd.code == kOk);
  CHECK(json::parse(rd.out)["comparisons"].size() == 4);
  std::string csv = rsc_run({"rp", "--ring", "gf:5", "--csv"}).out;
  CHECK(csv.find('\n') != std::string::npos);
  CHECK(rsc_run({"sm2", "--ring", "gf:7"}).code == kOk);
}

TEST_CASE("verify JSON is deterministic apart from timing") {
  std::vector<std::string> args{"verify", "witt", "--rings", "gf:3,gf:5;zmod:4", "--json"};
  json a = json::parse(rsc_run(args).out), b = json::parse(rsc_run(args).out);
  CHECK(a.contains("timing"));
  a.erase("timing");
  b.erase("timing");
  CHECK(a.dump() == b.dump());
  CHECK(a["rings"] == json::parse(R"(["gf:3","gf:5","zmod:4"])"));
  for (const auto& c : a["checks"]) CHECK(c["status"] != "fail");
  // worker count does not change the report
  args.push_back("--jobs");
  args.push_back("3");
  json c = json::parse(rsc_run(args).out);
  c.erase("timing");
  CHECK(c.dump() == a.dump());
}

TEST_CASE("ring lists") {
  CHECK(split_ring_list("gf:3,zmod:4") == std::vector<std::string>{"gf:3", "zmod:4"});
  CHECK(split_ring_list("prod:gf:5,gf:4,gf:4") == std::vector<std::string>{"prod:gf:5,gf:4,gf:4"});
  CHECK(split_ring_list("gf:3,prod:gf:5,gf:4;zmod:9") ==
        std::vector<std::string>{"gf:3", "prod:gf:5,gf:4", "zmod:9"});
  CHECK(split_ring_list("").empty());
}

TEST_CASE("worker pool keeps job order") {
  auto out = parallel_map<long>(50, 4, [](std::size_t i) { return static_cast<long>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<long>(i * i));
  CHECK(parallel_map<int>(0, 4, [](std::size_t) { return 1; }).empty());
}

TEST_CASE("report rendering") {
  Report rep;
  rep.command = "verify x";
  rep.rings = {"gf:3"};
  rep.checks.push_back({"gf:3", {"a, \"b\"", Status::Reported, "x"}});
  CHECK_FALSE(rep.failed());
  std::ostringstream csv;
  rep.write_csv(csv);
  CHECK(csv.str() == "ring,name,status,detail\ngf:3,\"a, \"\"b\"\"\",reported,x\n");
  rep.checks.push_back({"gf:3", {"c", Status::Fail, ""}});
  CHECK(rep.failed());
  json j = rep.to_json(false);
  CHECK(j["summary"]["fail"] == 1);
  CHECK_FALSE(j.contains("timing"));
}

TEST_CASE("cached and fresh invariant factors agree") {
  TempDir tmp;
  std::mt19937 rng(7);
  DiskCache cache(tmp.path, 0);
  for (int trial = 0; trial < 30; ++trial) {
    SparseMatrix m = random_sparse(rng, 2 + static_cast<int>(rng() % 7), 2 + static_cast<int>(rng() % 7));
    SparseInvariants fresh = sparse_invariant_factors(m);
    CHECK_FALSE(cache.get(m).has_value());
    SparseInvariants first = cached_invariant_factors(m, &cache);
    auto hit = DiskCache(tmp.path, 0).get(m);
    REQUIRE(hit.has_value());
    CHECK(hit->rank == fresh.rank);
    CHECK(hit->nonunit == fresh.nonunit);
    CHECK(first.nonunit == fresh.nonunit);
    CHECK(testing::longs(hit->nonunit) == dense_nonunit(m.to_dense()));
  }
  // no stray temporaries
  for (const auto& e : fs::directory_iterator(tmp.path)) CHECK(e.path().extension() == ".json");

  SparseMatrix a(2), b(2);
  a.add_column({{0, 2}});
  b.add_column({{1, 2}});
  CHECK(DiskCache::key(a) != DiskCache::key(b));
  CHECK(DiskCache::key(a).size() == 64);

  // a corrupt entry is ignored and then replaced
  std::ofstream(tmp.path / (DiskCache::key(a) + ".json")) << "{not json";
  CHECK_FALSE(cache.get(a).has_value());
  cache.put(a, sparse_invariant_factors(a));
  CHECK(cache.get(a)->nonunit == testing::bigs({2}));

  // small matrices bypass a thresholded cache
  DiskCache thresholded(tmp.path / "big", 1000);
  thresholded.put(b, sparse_invariant_factors(b));
  CHECK_FALSE(thresholded.get(b).has_value());
}

TEST_CASE("homology through the on-disk cache") {
  TempDir tmp;
  std::ostringstream out1, out2, err;
  std::vector<std::string> args{"homology", "--ring", "gf:3", "--group", "SL2", "--dim", "2", "--cache-dir",
                                tmp.path.string()};
  CHECK(run(args, out1, err) == kOk);
  long files = std::distance(fs::directory_iterator(tmp.path), fs::directory_iterator{});
  CHECK(files > 0);
  CHECK(run(args, out2, err) == kOk);
  CHECK(out1.str() == "0\n");
  CHECK(out2.str() == out1.str());
}

TEST_CASE("certificates recompute to the reported group") {
  TempDir tmp;
  fs::path file = tmp.path / "cert.json";
  Result r = rsc_run({"homology", "--ring", "gf:5", "--group", "T", "--dim", "1", "--certificate", file.string()});
  REQUIRE(r.code == kOk);
  CHECK(r.out == "Z/4\n");
  std::ifstream in(file);
  json cert = json::parse(in);
  CHECK(cert["homology"] == json::parse(R"({"free_rank":0,"torsion":[4]})"));
  auto dense = [](const json& m) {
    IntMatrix out(m["rows"].get<int>(), m["cols"].get<int>());
    for (const auto& e : m["entries"]) out(e[0].get<int>(), e[1].get<int>()) = e[2].get<long>();
    return out;
  };
  IntMatrix dn = dense(cert["boundaries"]["d_n"]), dn1 = dense(cert["boundaries"]["d_n+1"]);
  CHECK((dn * dn1).triplets().empty());
  // H_n = Z^(rank - rk d_n - rk d_n+1) + torsion of d_n+1
  long rank = cert["chain_rank"].get<long>();
  long rk_n = dn.empty() ? 0 : static_cast<long>(smith_normal_form(dn).rank);
  SmithForm s1 = smith_normal_form(dn1);
  CHECK(rank - rk_n - static_cast<long>(s1.rank) == 0);
  CHECK(dense_nonunit(dn1) == std::vector<long>{4});
}
