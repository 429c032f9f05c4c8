#include <algorithm>
#include <map>

#include "rsc/ring.hpp"
#include "support.hpp"

using namespace rsc;
using namespace rsc::testing;

namespace {

const std::vector<std::string> kCorpus{"gf:2",  "gf:3",  "gf:4",   "gf:5",   "gf:7",  "gf:8",
                                       "gf:9",  "zmod:4", "zmod:6", "zmod:8", "zmod:9", "zmod:12",
                                       "prod:gf:2,zmod:4", "prod:gf:5,gf:4,gf:4"};

// Number of units of each order, by brute-force powering.
std::map<long, long> order_counts(const FiniteRing& r) {
  std::map<long, long> out;
  for (Elem u : r.units()) {
    long k = 1;
    Elem x = u;
    while (x != r.one()) {
      x = r.mul(x, u);
      ++k;
    }
    ++out[k];
  }
  return out;
}

// Same counts for a product of cyclic groups, computed from the orders alone.
std::map<long, long> order_counts(const std::vector<long>& orders) {
  std::map<long, long> out;
  std::vector<long> e(orders.size(), 0);
  while (true) {
    long o = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      long oi = orders[i] / std::gcd(orders[i], e[i]);
      o = o / std::gcd(o, oi) * oi;
    }
    ++out[o];
    std::size_t i = 0;
    while (i < e.size() && ++e[i] == orders[i]) e[i++] = 0;
    if (i == e.size()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("ring spec parsing") {
  auto z8 = parse_ring_spec("zmod:8");
  CHECK(z8.kind == RingKind::Zmod);
  CHECK(z8.modulus == 8);
  auto p = parse_ring_spec("prod:gf:5,gf:4,gf:4");
  CHECK(p.kind == RingKind::Prod);
  CHECK(p.factors.size() == 3);
  CHECK(p.to_string() == "prod:gf:5,gf:4,gf:4");
  CHECK_THROWS_AS(parse_ring_spec("gf:6"), UsageError);
  CHECK_THROWS_AS(parse_ring_spec("zmod:1"), UsageError);
  CHECK_THROWS_AS(parse_ring_spec("zmod:x"), UsageError);
  CHECK_THROWS_AS(parse_ring_spec("prod:gf:5"), UsageError);
  CHECK_THROWS_AS(parse_ring_spec("prod:gf:5,prod:gf:2,gf:3"), UsageError);
  CHECK_THROWS_AS(parse_ring_spec("foo:3"), UsageError);
}

TEST_CASE("ring axioms hold exhaustively on small rings") {
  for (const auto& spec : kCorpus) {
    FiniteRing r(spec);
    if (r.size() > 64) continue;
    CAPTURE(spec);
    CHECK(r.one() != r.zero());
    bool ok = true;
    for (Elem a = 0; a < r.size() && ok; ++a)
      for (Elem b = 0; b < r.size() && ok; ++b) {
        ok = ok && r.add(a, b) == r.add(b, a) && r.mul(a, b) == r.mul(b, a);
        for (Elem c = 0; c < r.size() && ok; ++c) {
          ok = ok && r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c));
          ok = ok && r.add(r.add(a, b), c) == r.add(a, r.add(b, c));
          ok = ok && r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c));
        }
      }
    CHECK(ok);
    for (Elem a = 0; a < r.size(); ++a) {
      CHECK(r.add(a, r.neg(a)) == r.zero());
      CHECK(r.mul(a, r.one()) == a);
    }
  }
}

TEST_CASE("formula arithmetic matches tables on a large field") {
  FiniteRing big("gf:5041");  // 71^2, above the table threshold
  FiniteRing small("gf:49");
  CHECK(big.size() == 5041);
  for (Elem a = 1; a < 200; a += 7) {
    CHECK(big.mul(a, big.inv(a)) == big.one());
    CHECK(big.pow(a, 5040) == big.one());
  }
  for (Elem a : small.units()) CHECK(small.pow(a, 48) == small.one());
}

TEST_CASE("gf rendering uses the least irreducible polynomial") {
  FiniteRing f4("gf:4"), f9("gf:9");
  CHECK(f4.gf_modulus() == std::vector<int>{1, 1, 1});
  CHECK(f9.gf_modulus() == std::vector<int>{1, 0, 1});
  CHECK(f4.render(2) == "x");
  CHECK(f4.render(3) == "x+1");
  CHECK(f4.parse_element("x+1") == 3);
  FiniteRing p("prod:gf:5,gf:4");
  CHECK(p.render(p.one()) == "(1,1)");
  CHECK(p.components(p.one()) == std::vector<Elem>{1, 1});
}

TEST_CASE("unit groups match exhaustive enumeration") {
  FiniteRing z8("zmod:8"), f5("gf:5"), f4("gf:4");
  UnitGroup u8(z8), u5(f5), u4(f4);
  CHECK(u8.orders() == std::vector<long>{2, 2});
  CHECK(z8.units() == std::vector<Elem>{1, 3, 5, 7});
  CHECK(u5.orders() == std::vector<long>{4});
  CHECK(u4.orders() == std::vector<long>{3});
  for (const auto& spec : kCorpus) {
    FiniteRing r(spec);
    UnitGroup u(r);
    CAPTURE(spec);
    long prod = 1;
    for (long o : u.orders()) prod *= o;
    CHECK(prod == u.order());
    for (std::size_t i = 0; i + 1 < u.orders().size(); ++i) CHECK(u.orders()[i + 1] % u.orders()[i] == 0);
    CHECK(order_counts(r) == order_counts(u.orders()));
    for (Elem x : r.units()) CHECK(u.exp(u.dlog(x)) == x);
    long brute = 0;
    for (Elem a = 0; a < r.size(); ++a)
      for (Elem b = 0; b < r.size(); ++b)
        if (r.mul(a, b) == r.one()) {
          ++brute;
          break;
        }
    CHECK(brute == u.order());
  }
}

TEST_CASE("product unit count is the product of factor counts") {
  FiniteRing p("prod:gf:5,gf:4,gf:4");
  long prod = 1;
  for (const auto& f : p.factors()) prod *= static_cast<long>(f.units().size());
  CHECK(static_cast<long>(p.units().size()) == prod);
}

TEST_CASE("mu2") {
  CHECK(mu2(FiniteRing("gf:5")) == std::vector<Elem>{1, 4});
  CHECK(mu2(FiniteRing("zmod:8")) == std::vector<Elem>{1, 3, 5, 7});
  CHECK(mu2(FiniteRing("gf:4")) == std::vector<Elem>{1});
  for (const auto& spec : kCorpus) {
    FiniteRing r(spec);
    CAPTURE(spec);
    std::vector<Elem> brute;
    for (Elem u : r.units())
      if (r.mul(u, u) == r.one()) brute.push_back(u);
    CHECK(mu2(r) == brute);
    auto m = mu2(r);
    CHECK(std::count(m.begin(), m.end(), r.one()) == 1);
    CHECK(std::count(m.begin(), m.end(), r.minus_one()) == 1);
    if (r.is_field() && r.characteristic() != 2) CHECK(m.size() == 2);
  }
}

TEST_CASE("W_A") {
  CHECK(w_set(FiniteRing("gf:3")) == std::vector<Elem>{2});
  CHECK(w_set(FiniteRing("gf:4")) == std::vector<Elem>{2, 3});
  CHECK(w_set(FiniteRing("zmod:4")).empty());
  for (const auto& spec : kCorpus) {
    FiniteRing r(spec);
    CAPTURE(spec);
    long bad = 0;
    for (Elem a = 0; a < r.size(); ++a)
      if (!r.is_unit(a) || !r.is_unit(r.sub(r.one(), a))) ++bad;
    CHECK(static_cast<long>(w_set(r).size()) == r.size() - bad);
    for (Elem a : w_set(r)) CHECK(r.is_unit(r.mul(a, r.sub(r.one(), a))));
  }
}

TEST_CASE("H0 of units acting on A") {
  CHECK(h0_units_on_A(FiniteRing("gf:7")).is_trivial());
  CHECK(h0_units_on_A(FiniteRing("gf:3")).to_string() == "Z/3");
  CHECK(h0_units_on_A(FiniteRing("zmod:8")).to_string() == "Z/8");
  // the relation 1 = 3(2^2-1) + (-1)(3^2-1) in F_7
  FiniteRing f7("gf:7");
  CHECK(f7.add(f7.mul(3, 3), f7.mul(f7.minus_one(), 8 % 7)) == f7.one());
}
