#include <set>

#include "rsc/grpring.hpp"
#include "support.hpp"

using namespace rsc;
using namespace rsc::testing;

TEST_CASE("square class groups") {
  FiniteRing f5("gf:5"), f4("gf:4"), z8("zmod:8");
  UnitGroup u5(f5), u4(f4), u8(z8);
  SquareClassGroup g5(u5), g4(u4), g8(u8);
  CHECK(g5.order() == 2);
  CHECK(g4.order() == 1);
  CHECK(g8.order() == 4);
  CHECK(g5.class_of(1) == 0);
  CHECK(g5.class_of(4) == 0);
  CHECK(g5.class_of(2) == g5.class_of(3));
  CHECK(g5.name(g5.class_of(3)) == "⟨2⟩");
}

TEST_CASE("class map is a surjective homomorphism with kernel the squares") {
  for (const char* spec : {"gf:3", "gf:5", "gf:9", "zmod:8", "zmod:9", "zmod:12", "prod:gf:5,gf:4,gf:4"}) {
    FiniteRing r(spec);
    UnitGroup u(r);
    SquareClassGroup g(u);
    CAPTURE(spec);
    std::set<Elem> squares;
    for (Elem a : r.units()) squares.insert(r.mul(a, a));
    CHECK(g.order() * static_cast<long>(squares.size()) == u.order());
    std::set<int> hit;
    for (Elem a : r.units()) {
      hit.insert(g.class_of(a));
      CHECK((g.class_of(a) == 0) == (squares.count(a) == 1));
      for (Elem b : r.units()) CHECK(g.class_of(r.mul(a, b)) == (g.class_of(a) ^ g.class_of(b)));
    }
    CHECK(static_cast<int>(hit.size()) == g.order());
    for (int c = 0; c < g.order(); ++c) {
      Elem rep = g.representative(c);
      CHECK(g.class_of(rep) == c);
      for (Elem a : r.units())
        if (g.class_of(a) == c) CHECK(rep <= a);
    }
  }
}

TEST_CASE("brackets") {
  FiniteRing f5("gf:5");
  UnitGroup u(f5);
  SquareClassGroup g(u);
  CHECK(bracket(g, 1).is_zero());
  CHECK(bracket(g, 4).is_zero());
  CHECK(p_minus_one_plus(g).augmentation() == 2);
  CHECK(bracket(g, 2).augmentation() == 0);
  CHECK_THROWS_AS(bracket(g, 0), MathError);
  // (s - 1)^2 = 2 - 2s = -2(s - 1) when s^2 = 1
  CHECK(bracket(g, 2) * bracket(g, 2) == bracket(g, 2) * -2);
  CHECK((angle(g, 2) * 3 - angle(g, 1)).render(g) == "3·⟨2⟩ − 1·⟨1⟩");
  CHECK(GroupRingElem(2).render(g) == "0");
}

TEST_CASE("bracket product rule and square invariance") {
  for (const char* spec : {"gf:5", "gf:7", "gf:9", "zmod:8", "zmod:12", "zmod:9"}) {
    FiniteRing r(spec);
    UnitGroup u(r);
    SquareClassGroup g(u);
    CAPTURE(spec);
    REQUIRE(u.order() <= 64);
    for (Elem a : r.units())
      for (Elem b : r.units()) {
        CHECK(bracket(g, a) * bracket(g, b) == bracket(g, r.mul(a, b)) - bracket(g, a) - bracket(g, b));
        CHECK(bracket(g, r.mul(r.mul(a, a), b)) == bracket(g, b));
      }
  }
}

TEST_CASE("augmentation ideal and its square") {
  FiniteRing f4("gf:4"), f5("gf:5");
  UnitGroup u4(f4), u5(f5);
  SquareClassGroup g4(u4), g5(u5);
  CHECK(augmentation_ideal(g4).group.is_trivial());
  Subgroup i5 = augmentation_ideal(g5);
  CHECK(i5.group.to_string() == "Z");
  CHECK(i5.inclusion.apply(Vec{BigInt(1)}) == bracket(g5, 2).to_vec());
  Subgroup sq = power_ideal_squared(g5);
  // I^2 = 2I inside I = Z
  CHECK(cokernel(sq.inclusion).group.to_string() == "Z/2");
  CHECK(ideal_coords(bracket(g5, 2)) == Vec{BigInt(1)});
  CHECK_THROWS_AS(ideal_coords(angle(g5, 2)), MathError);
}

TEST_CASE("flattening a free module") {
  FiniteRing z8("zmod:8");
  UnitGroup u(z8);
  SquareClassGroup g(u);
  GModulePresentation free(g, {"[e]"});
  FpAbelianGroup f = free.flatten();
  CHECK(f.free_rank() == g.order());
  CHECK(f.torsion().empty());

  GModulePresentation one(g, {"[e]"});
  one.add_relation(bracket(g, 3) * one.symbol(0));
  CHECK(one.flattened_relations().cols() == g.order());
  CHECK(one.flat_name(one.flat_index(0, g.class_of(3))) == "⟨3⟩[e]");
  // Z[G]/(<3> - 1) = Z[G/<3>]
  CHECK(one.flatten().to_string() == "Z ⊕ Z");
}
