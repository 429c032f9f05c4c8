#include <map>

#include "rsc/sparse.hpp"
#include "support.hpp"

using namespace rsc;
using namespace rsc::testing;

namespace {

// 2x2 invariants by hand: d1 = gcd of entries, d2 = |det| / d1.
std::pair<long, long> smith2(long a, long b, long c, long d) {
  long g = std::gcd(std::gcd(std::labs(a), std::labs(b)), std::gcd(std::labs(c), std::labs(d)));
  if (g == 0) return {0, 0};
  return {g, std::labs(a * d - b * c) / g};
}

IntMatrix random_matrix(int r, int c, int range, std::mt19937& rng) {
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = static_cast<long>(rng() % (2 * range + 1)) - range;
  return m;
}

bool is_diagonal_form(const IntMatrix& m, const std::vector<BigInt>& d) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      BigInt want = (i == j) ? d[i] : BigInt(0);
      if (m(i, j) != want) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("smith form of [[3,-2],[-2,3]]") {
  auto snf = smith_normal_form(IntMatrix::from_rows({{3, -2}, {-2, 3}}));
  auto hand = smith2(3, -2, -2, 3);
  CHECK(longs(snf.diagonal) == std::vector<long>{hand.first, hand.second});
  CHECK(longs(snf.diagonal) == std::vector<long>{1, 5});
}

TEST_CASE("smith form of zero and identity") {
  CHECK(longs(smith_normal_form(IntMatrix(3, 3)).diagonal) == std::vector<long>{0, 0, 0});
  CHECK(longs(smith_normal_form(IntMatrix::identity(4)).diagonal) == std::vector<long>{1, 1, 1, 1});
  CHECK(smith_normal_form(IntMatrix(0, 3)).diagonal.empty());
}

TEST_CASE("smith form agrees with the 2x2 hand oracle") {
  std::mt19937 rng(7);
  for (int t = 0; t < 300; ++t) {
    IntMatrix m = random_matrix(2, 2, 9, rng);
    auto snf = smith_normal_form(m);
    auto hand = smith2(m(0, 0).get_si(), m(0, 1).get_si(), m(1, 0).get_si(), m(1, 1).get_si());
    if (hand.first != 0 && hand.second == 0) {
      CHECK(longs(snf.diagonal) == std::vector<long>{hand.first, 0});
    } else {
      CHECK(longs(snf.diagonal) == std::vector<long>{hand.first, hand.second});
    }
  }
}

TEST_CASE("smith transforms reproduce the diagonal") {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    int r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(r, c, 6, rng);
    auto snf = smith_normal_form(m, {true, true});
    CHECK(is_diagonal_form(snf.U * m * snf.V, snf.diagonal));
    CHECK(snf.U * snf.Uinv == IntMatrix::identity(r));
    CHECK(snf.V * snf.Vinv == IntMatrix::identity(c));
    for (int i = 0; i + 1 < snf.rank; ++i) CHECK(snf.diagonal[i + 1] % snf.diagonal[i] == 0);
    for (int i = 0; i < static_cast<int>(snf.diagonal.size()); ++i) CHECK((snf.diagonal[i] != 0) == (i < snf.rank));
  }
}

TEST_CASE("smith form is idempotent on its own diagonal") {
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m = random_matrix(4, 3, 8, rng);
    auto d = smith_normal_form(m).diagonal;
    IntMatrix dm(4, 3);
    for (int i = 0; i < 3; ++i) dm(i, i) = d[i];
    CHECK(smith_normal_form(dm).diagonal == d);
  }
}

TEST_CASE("kernel and cokernel basics") {
  FpAbelianGroup z = FpAbelianGroup::free(1);
  Quotient q = cokernel(AbMorphism(z, z, IntMatrix::from_rows({{2}})));
  CHECK(q.group.to_string() == "Z/2");

  Subgroup k = kernel(AbMorphism(z, FpAbelianGroup::free(0), IntMatrix(0, 1)));
  CHECK(k.group.free_rank() == 1);
  CHECK(k.group.torsion().empty());

  FpAbelianGroup z2 = FpAbelianGroup::free(2);
  IntMatrix d = IntMatrix::from_rows({{2, 0}, {0, 3}});
  Quotient q6 = cokernel(AbMorphism(z2, z2, d));
  // index of the image lattice is |det| = 6 and the group is cyclic
  CHECK(q6.group.order() == BigInt(6));
  CHECK(longs(q6.group.torsion()) == std::vector<long>{6});
}

TEST_CASE("ill-defined morphisms are rejected") {
  CHECK_THROWS_AS(AbMorphism(finite({2}), finite({3}), IntMatrix::from_rows({{1}})), MathError);
  CHECK(ill_defined_relations(finite({2}), finite({3}), IntMatrix::from_rows({{1}})) == std::vector<int>{0});
  CHECK_NOTHROW(AbMorphism(finite({2}), finite({4}), IntMatrix::from_rows({{2}})));
}

TEST_CASE("exactness examples") {
  FpAbelianGroup z = FpAbelianGroup::free(1);
  AbMorphism times2(z, z, IntMatrix::from_rows({{2}}));
  AbMorphism reduce(z, finite({2}), IntMatrix::from_rows({{1}}));
  CHECK(is_exact_at(times2, reduce));
  // zero followed by the identity is exact: both subgroups are 0
  CHECK(is_exact_at(AbMorphism::zero(z, z), AbMorphism::identity(z)));
  CHECK_FALSE(is_exact_at(AbMorphism::zero(z, z), AbMorphism::zero(z, z)));
  CHECK_FALSE(is_exact_at(times2, AbMorphism::zero(z, z)));
  CHECK_THROWS_AS(is_exact_at(reduce, times2), UsageError);
}

TEST_CASE("order bookkeeping |G| = |ker f| |im f|") {
  std::mt19937 rng(5);
  for (int t = 0; t < 80; ++t) {
    std::vector<long> src, tgt;
    for (int i = 0, n = 1 + rng() % 3; i < n; ++i) src.push_back(2 + rng() % 7);
    for (int i = 0, n = 1 + rng() % 3; i < n; ++i) tgt.push_back(2 + rng() % 7);
    AbMorphism f(finite(src), finite(tgt), random_hom(src, tgt, rng));
    BigInt ko = *kernel(f).group.order(), io = *image(f).group.order();
    CHECK(ko * io == *f.source().order());
    CHECK(*cokernel(f).group.order() * io == *f.target().order());
  }
}

TEST_CASE("kernel and image agree with enumeration") {
  std::mt19937 rng(17);
  for (int t = 0; t < 40; ++t) {
    std::vector<long> src{2 + static_cast<long>(rng() % 6), 2 + static_cast<long>(rng() % 6)};
    std::vector<long> tgt{2 + static_cast<long>(rng() % 6), 2 + static_cast<long>(rng() % 4)};
    AbMorphism f(finite(src), finite(tgt), random_hom(src, tgt, rng));
    std::set<Vec> img, ker;
    for (const auto& x : elements(f.source())) {
      Vec y = f.target().normal_form(f.apply(x));
      img.insert(y);
      if (rsc::is_zero(y)) ker.insert(f.source().normal_form(x));
    }
    Subgroup k = kernel(f);
    std::set<Vec> kset;
    for (const auto& x : elements(k.group)) kset.insert(f.source().normal_form(k.inclusion.apply(x)));
    CHECK(kset == ker);
    Subgroup im = image(f);
    std::set<Vec> iset;
    for (const auto& x : elements(im.group)) iset.insert(f.target().normal_form(im.inclusion.apply(x)));
    CHECK(iset == img);
  }
}

TEST_CASE("is_exact_at agrees with brute force on groups of order at most 512") {
  std::mt19937 rng(23);
  for (int t = 0; t < 120; ++t) {
    std::vector<long> a{2 + static_cast<long>(rng() % 4)};
    std::vector<long> b{2 + static_cast<long>(rng() % 4), 2 + static_cast<long>(rng() % 4)};
    std::vector<long> c{2 + static_cast<long>(rng() % 4)};
    IntMatrix fm = random_hom(a, b, rng);
    IntMatrix gm = random_hom(b, c, rng);
    AbMorphism f(finite(a), finite(b), fm), g(finite(b), finite(c), gm);
    std::set<Vec> img, ker;
    for (const auto& x : elements(f.source())) img.insert(f.target().normal_form(f.apply(x)));
    for (const auto& y : elements(g.source()))
      if (g.target().is_zero(g.apply(y))) ker.insert(g.source().normal_form(y));
    bool brute = img == ker;
    CHECK(is_exact_at(f, g) == brute);
  }
}

TEST_CASE("exact sequences are found when constructed") {
  std::mt19937 rng(29);
  for (int t = 0; t < 30; ++t) {
    std::vector<long> src{2 + static_cast<long>(rng() % 8), 2 + static_cast<long>(rng() % 8)};
    std::vector<long> tgt{2 + static_cast<long>(rng() % 8)};
    AbMorphism f(finite(src), finite(tgt), random_hom(src, tgt, rng));
    Subgroup k = kernel(f);
    Quotient q = cokernel(f);
    CHECK(is_exact_at(k.inclusion, f));
    CHECK(is_exact_at(f, q.projection));
  }
}

TEST_CASE("wedge square of Z/4 + Z/3 + Z/3") {
  FpAbelianGroup g = finite({4, 3, 3});
  BilinearGroup w = wedge_square(g);
  // independent oracle: sum over i<j of Z/gcd(n_i, n_j), reduced by SNF
  std::vector<long> n{4, 3, 3};
  std::vector<long> gcds;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) gcds.push_back(std::gcd(n[i], n[j]));
  CHECK(w.group().isomorphic_to(finite(gcds)));
  CHECK(w.group().to_string() == "Z/3");
}

TEST_CASE("wedge square of a cyclic group vanishes") {
  for (long m = 1; m <= 100; ++m) CHECK(wedge_square(FpAbelianGroup::cyclic(m)).group().is_trivial());
}

TEST_CASE("tensor and symmetric squares") {
  CHECK(tensor(finite({2}), finite({3})).group().is_trivial());
  CHECK(tensor(finite({4}), finite({6})).group().to_string() == "Z/2");
  // S^2(Z/4): one generator g.g with 4(g.g) = 0 and 2(g.g) = 0
  FpAbelianGroup direct(1, IntMatrix::from_rows({{4, 2}}));
  BilinearGroup s = sym2_square(finite({4}));
  CHECK(s.group().isomorphic_to(direct));
  CHECK(s.group().to_string() == "Z/2");
  Vec g{BigInt(1)};
  CHECK(s.group().equal(s.eval(g, g), s.eval(g, g)));
  BilinearGroup w = wedge_square(finite({2, 2}));
  Vec e1{1, 0}, e2{0, 1};
  CHECK(w.group().is_zero(w.eval(e1, e1)));
  CHECK_FALSE(w.group().is_zero(w.eval(e1, e2)));
  Vec sum = w.eval(e1, e2);
  Vec back = w.eval(e2, e1);
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += back[i];
  CHECK(w.group().is_zero(sum));
}

TEST_CASE("fiber product examples") {
  // Z/4 x_{Z/2} Z/2 along reduction and identity
  AbMorphism red(finite({4}), finite({2}), IntMatrix::from_rows({{1}}));
  AbMorphism id = AbMorphism::identity(finite({2}));
  FiberProduct fp = fiber_product(red, id);
  int count = 0;
  for (long x = 0; x < 4; ++x)
    for (long y = 0; y < 2; ++y) count += (x % 2 == y);
  CHECK(fp.group.order() == BigInt(count));
  CHECK(fp.group.to_string() == "Z/4");

  FpAbelianGroup zero = FpAbelianGroup::free(0);
  FiberProduct prod = fiber_product(AbMorphism::zero(finite({2}), zero), AbMorphism::zero(finite({3}), zero));
  CHECK(prod.group.to_string() == "Z/6");

  FiberProduct diag = fiber_product(id, id);
  CHECK(diag.group.to_string() == "Z/2");
}

TEST_CASE("fiber product order agrees with enumeration") {
  std::mt19937 rng(31);
  for (int t = 0; t < 40; ++t) {
    std::vector<long> g{2 + static_cast<long>(rng() % 6)};
    std::vector<long> h{2 + static_cast<long>(rng() % 6), 2 + static_cast<long>(rng() % 3)};
    std::vector<long> k{2 + static_cast<long>(rng() % 6)};
    AbMorphism f(finite(g), finite(k), random_hom(g, k, rng));
    AbMorphism e(finite(h), finite(k), random_hom(h, k, rng));
    long count = 0;
    for (const auto& x : elements(f.source()))
      for (const auto& y : elements(e.source()))
        count += f.target().equal(f.apply(x), e.apply(y));
    FiberProduct fp = fiber_product(f, e);
    CHECK(fp.group.order() == BigInt(count));
    for (int i = 0; i < fp.group.num_generators(); ++i)
      CHECK(f.target().equal(f.apply(fp.pr1.apply(fp.group.generator(i))), e.apply(fp.pr2.apply(fp.group.generator(i)))));
  }
}

TEST_CASE("preimage solves within presented groups") {
  AbMorphism f(finite({6}), finite({3}), IntMatrix::from_rows({{1}}));
  auto x = preimage(f, Vec{BigInt(2)});
  REQUIRE(x);
  CHECK(f.target().equal(f.apply(*x), Vec{BigInt(2)}));
  AbMorphism g(finite({3}), finite({6}), IntMatrix::from_rows({{2}}));
  CHECK_FALSE(preimage(g, Vec{BigInt(1)}));
  CHECK(preimage(g, Vec{BigInt(4)}));
}

TEST_CASE("json rendering of groups") {
  CHECK(finite({2, 4}).to_json().dump() == R"({"free_rank":0,"torsion":[2,4]})");
  CHECK(FpAbelianGroup::from_invariants(1, bigs({2})).to_string() == "Z/2 ⊕ Z");
  CHECK(FpAbelianGroup::free(0).to_string() == "0");
}

TEST_CASE("sparse invariants match dense smith form") {
  std::mt19937 rng(37);
  for (int t = 0; t < 60; ++t) {
    int r = 1 + rng() % 7, c = 1 + rng() % 7;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (rng() % 3 == 0) m(i, j) = static_cast<long>(rng() % 7) - 3;
    auto dense = smith_normal_form(m);
    auto sparse = sparse_invariant_factors(SparseMatrix::from_dense(m));
    CHECK(sparse.rank == dense.rank);
    std::vector<BigInt> nonunit;
    for (const auto& d : dense.diagonal)
      if (d > 1) nonunit.push_back(d);
    CHECK(sparse.nonunit == nonunit);
  }
}

TEST_CASE("sparse kernel spans the integer kernel") {
  std::mt19937 rng(41);
  for (int t = 0; t < 40; ++t) {
    int r = 1 + rng() % 5, c = 1 + rng() % 7;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (rng() % 2 == 0) m(i, j) = static_cast<long>(rng() % 5) - 2;
    auto ker = sparse_kernel(SparseMatrix::from_dense(m));
    auto snf = smith_normal_form(m);
    CHECK(static_cast<int>(ker.size()) == c - snf.rank);
    std::vector<Vec> cols;
    for (const auto& v : ker) {
      Vec d = dense_from_sparse(v, c);
      CHECK(rsc::is_zero(m * d));
      cols.push_back(d);
    }
    // saturated: the quotient of Z^c by the kernel basis is torsion-free
    FpAbelianGroup q(c, IntMatrix::from_columns(c, cols));
    CHECK(q.torsion().empty());
  }
}

TEST_CASE("subquotient computes homology of a small complex") {
  // circle: two vertices, two edges
  SparseMatrix d1(2);
  d1.add_column({{0, -1}, {1, 1}});
  d1.add_column({{0, 1}, {1, -1}});
  Subquotient h1(2, SparseMatrix(2), d1);
  CHECK(h1.group().to_string() == "Z");
  // Z modulo multiplication by 3 inside ker(0)
  SparseMatrix rel(1);
  rel.add_column({{0, 3}});
  Subquotient q(1, rel, SparseMatrix(0, 1));
  CHECK(q.group().to_string() == "Z/3");
  CHECK(q.group().equal(q.classify(Vec{BigInt(4)}), q.classify(Vec{BigInt(1)})));
  Vec rep = q.representative(0);
  CHECK(q.is_cycle(rep));
}

TEST_CASE("subquotient representatives classify to the standard generators") {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    int n = 2 + rng() % 5, m = 1 + rng() % 3;
    IntMatrix d(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (rng() % 3 == 0) d(i, j) = static_cast<long>(rng() % 5) - 2;
    SparseMatrix map = SparseMatrix::from_dense(d);
    // relations: random integer combinations of kernel vectors
    auto ker = sparse_kernel(map);
    SparseMatrix rel(n);
    for (int k = 0; k < static_cast<int>(ker.size()); ++k) {
      SparseVec col;
      for (const auto& z : ker) {
        long f = static_cast<long>(rng() % 5) - 2;
        for (auto [i, c] : z) col.emplace_back(i, c * f);
      }
      rel.add_column(std::move(col));
    }
    Subquotient q(n, rel, map);
    const FpAbelianGroup& g = q.group();
    for (int i = 0; i < g.num_generators(); ++i) {
      Vec e = zero_vec(g.num_generators());
      e[i] = 1;
      CHECK(q.is_cycle(q.representative(i)));
      CHECK(g.equal(q.classify(q.representative(i)), e));
    }
    for (int j = 0; j < rel.cols(); ++j) CHECK(g.is_zero(q.classify(rel.column(j))));
  }
}
