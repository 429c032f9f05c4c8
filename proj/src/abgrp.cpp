#include "rsc/abgrp.hpp"

#include <sstream>
#include <utility>

#include "rsc/errors.hpp"

namespace rsc {

FpAbelianGroup::FpAbelianGroup(int generators, IntMatrix relations)
    : gens_(generators), rel_(std::move(relations)) {
  if (rel_.rows() != gens_) {
    if (rel_.cols() == 0 && rel_.rows() == 0)
      rel_ = IntMatrix(gens_, 0);
    else
      throw UsageError("relation matrix must have one row per generator");
  }
  SmithForm s = smith_normal_form(rel_, {.left = true, .right = false});
  U_ = std::move(s.U);
  Uinv_ = std::move(s.Uinv);
  diag_ = s.padded(gens_);
  for (const auto& d : diag_) {
    if (sgn(d) == 0)
      ++free_rank_;
    else if (d > 1)
      torsion_.push_back(d);
  }
}

FpAbelianGroup FpAbelianGroup::free(int rank) { return FpAbelianGroup(rank, IntMatrix(rank, 0)); }

FpAbelianGroup FpAbelianGroup::cyclic(const BigInt& n) {
  IntMatrix r(1, 1);
  r(0, 0) = n;
  return FpAbelianGroup(1, r);
}

FpAbelianGroup FpAbelianGroup::from_invariants(int free_rank, const std::vector<BigInt>& torsion) {
  int g = free_rank + static_cast<int>(torsion.size());
  IntMatrix r(g, static_cast<int>(torsion.size()));
  for (std::size_t i = 0; i < torsion.size(); ++i) r(static_cast<int>(i), static_cast<int>(i)) = torsion[i];
  return FpAbelianGroup(g, r);
}

std::optional<BigInt> FpAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  BigInt o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

Vec FpAbelianGroup::normal_form(const Vec& x) const {
  if (static_cast<int>(x.size()) != gens_) throw UsageError("element has wrong number of coordinates");
  Vec c = U_ * x;
  for (int i = 0; i < gens_; ++i) {
    if (diag_[i] == 1)
      c[i] = 0;
    else if (sgn(diag_[i]) != 0)
      mpz_fdiv_r(c[i].get_mpz_t(), c[i].get_mpz_t(), diag_[i].get_mpz_t());
  }
  return c;
}

bool FpAbelianGroup::is_zero(const Vec& x) const { return rsc::is_zero(normal_form(x)); }

bool FpAbelianGroup::equal(const Vec& x, const Vec& y) const {
  Vec d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return is_zero(d);
}

std::optional<BigInt> FpAbelianGroup::element_order(const Vec& x) const {
  Vec c = normal_form(x);
  BigInt o = 1, g, t;
  for (int i = 0; i < gens_; ++i) {
    if (sgn(c[i]) == 0) continue;
    if (sgn(diag_[i]) == 0) return std::nullopt;
    mpz_gcd(g.get_mpz_t(), c[i].get_mpz_t(), diag_[i].get_mpz_t());
    t = diag_[i] / g;
    mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), t.get_mpz_t());
  }
  return o;
}

Vec FpAbelianGroup::generator(int i) const {
  Vec v = zero_vec(gens_);
  v.at(i) = 1;
  return v;
}

std::vector<BigInt> FpAbelianGroup::summand_orders() const {
  std::vector<BigInt> out;
  for (const auto& d : diag_)
    if (d != 1) out.push_back(d);
  return out;
}

Vec FpAbelianGroup::to_summands(const Vec& x) const {
  Vec c = normal_form(x);
  Vec out;
  for (int i = 0; i < gens_; ++i)
    if (diag_[i] != 1) out.push_back(c[i]);
  return out;
}

Vec FpAbelianGroup::from_summands(const Vec& c) const {
  Vec x = zero_vec(gens_);
  std::size_t k = 0;
  for (int i = 0; i < gens_; ++i) {
    if (diag_[i] == 1) continue;
    const BigInt& ci = c.at(k++);
    if (sgn(ci) == 0) continue;
    for (int r = 0; r < gens_; ++r) x[r] += Uinv_(r, i) * ci;
  }
  return x;
}

bool FpAbelianGroup::isomorphic_to(const FpAbelianGroup& o) const {
  return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
}

std::string render_invariants(int free_rank, const std::vector<BigInt>& torsion) {
  if (free_rank == 0 && torsion.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion) {
    os << (first ? "" : " ⊕ ") << "Z/" << d.get_str();
    first = false;
  }
  for (int i = 0; i < free_rank; ++i) {
    os << (first ? "" : " ⊕ ") << "Z";
    first = false;
  }
  return os.str();
}

std::string FpAbelianGroup::to_string() const { return render_invariants(free_rank_, torsion_); }

nlohmann::json FpAbelianGroup::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& d : torsion_) {
    if (d.fits_slong_p())
      t.push_back(d.get_si());
    else
      t.push_back(d.get_str());
  }
  return {{"free_rank", free_rank_}, {"torsion", t}};
}

namespace {

bool same_presentation(const FpAbelianGroup& a, const FpAbelianGroup& b) {
  return a.num_generators() == b.num_generators() && a.relations() == b.relations();
}

}  // namespace

std::vector<int> ill_defined_relations(const FpAbelianGroup& source, const FpAbelianGroup& target,
                                       const IntMatrix& matrix) {
  if (matrix.rows() != target.num_generators() || matrix.cols() != source.num_generators())
    throw UsageError("morphism matrix shape does not match groups");
  std::vector<int> bad;
  const IntMatrix& r = source.relations();
  for (int j = 0; j < r.cols(); ++j)
    if (!target.is_zero(matrix * r.column(j))) bad.push_back(j);
  return bad;
}

AbMorphism::AbMorphism(FpAbelianGroup source, FpAbelianGroup target, IntMatrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)), mat_(std::move(matrix)) {
  auto bad = ill_defined_relations(src_, tgt_, mat_);
  if (!bad.empty())
    throw MathError("morphism is not well defined: relation " + std::to_string(bad.front()) +
                    " does not map to zero");
}

AbMorphism AbMorphism::identity(const FpAbelianGroup& g) {
  return AbMorphism(g, g, IntMatrix::identity(g.num_generators()));
}

AbMorphism AbMorphism::zero(const FpAbelianGroup& s, const FpAbelianGroup& t) {
  return AbMorphism(s, t, IntMatrix(t.num_generators(), s.num_generators()));
}

Vec AbMorphism::apply(const Vec& x) const { return mat_ * x; }

AbMorphism AbMorphism::then(const AbMorphism& after) const {
  if (!same_presentation(tgt_, after.src_)) throw UsageError("composition of mismatched morphisms");
  return AbMorphism(src_, after.tgt_, after.mat_ * mat_);
}

bool AbMorphism::is_zero() const {
  for (int j = 0; j < mat_.cols(); ++j)
    if (!tgt_.is_zero(mat_.column(j))) return false;
  return true;
}

namespace {

// Lattice {x in Z^g : F x in span(S)}.
Lattice preimage_lattice(const AbMorphism& f) {
  const int g = f.source().num_generators();
  const IntMatrix& s = f.target().relations();
  IntMatrix k = integer_kernel(f.matrix().hcat(s));
  IntMatrix top(g, k.cols());
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < k.cols(); ++j) top(i, j) = k(i, j);
  return Lattice(g, top);
}

}  // namespace

Subgroup kernel(const AbMorphism& f) {
  Lattice lat = preimage_lattice(f);
  const IntMatrix& b = lat.basis();
  const IntMatrix& r = f.source().relations();
  IntMatrix rel(lat.rank(), r.cols());
  Vec c;
  for (int j = 0; j < r.cols(); ++j) {
    if (!lat.coordinates(r.column(j), c)) throw MathError("source relation outside kernel lattice");
    for (int i = 0; i < lat.rank(); ++i) rel(i, j) = c[i];
  }
  FpAbelianGroup k(lat.rank(), rel);
  return {k, AbMorphism(k, f.source(), b)};
}

Subgroup image(const AbMorphism& f) {
  Lattice lat = preimage_lattice(f);
  FpAbelianGroup im(f.source().num_generators(), lat.basis());
  return {im, AbMorphism(im, f.target(), f.matrix())};
}

Quotient cokernel(const AbMorphism& f) {
  FpAbelianGroup q(f.target().num_generators(), f.target().relations().hcat(f.matrix()));
  return {q, AbMorphism(f.target(), q, IntMatrix::identity(q.num_generators()))};
}

Subgroup generated_subgroup(const FpAbelianGroup& g, const IntMatrix& elements) {
  return image(AbMorphism(FpAbelianGroup::free(elements.cols()), g, elements));
}

Quotient quotient_by(const FpAbelianGroup& g, const IntMatrix& elements) {
  return cokernel(AbMorphism(FpAbelianGroup::free(elements.cols()), g, elements));
}

bool is_injective(const AbMorphism& f) { return kernel(f).group.is_trivial(); }
bool is_surjective(const AbMorphism& f) { return cokernel(f).group.is_trivial(); }
bool is_isomorphism(const AbMorphism& f) { return is_injective(f) && is_surjective(f); }

bool is_exact_at(const AbMorphism& f, const AbMorphism& g) {
  if (!same_presentation(f.target(), g.source())) throw UsageError("is_exact_at: mismatched composition");
  IntMatrix gf = g.matrix() * f.matrix();
  for (int j = 0; j < gf.cols(); ++j)
    if (!g.target().is_zero(gf.column(j))) return false;
  Subgroup k = kernel(g);
  Quotient q = cokernel(f);
  const IntMatrix& inc = k.inclusion.matrix();
  for (int j = 0; j < inc.cols(); ++j)
    if (!q.group.is_zero(inc.column(j))) return false;
  return true;
}

DirectSum direct_sum(const FpAbelianGroup& a, const FpAbelianGroup& b) {
  const int na = a.num_generators(), nb = b.num_generators();
  FpAbelianGroup s(na + nb, block_diagonal(a.relations(), b.relations()));
  IntMatrix i1(na + nb, na), i2(na + nb, nb), p1(na, na + nb), p2(nb, na + nb);
  for (int i = 0; i < na; ++i) i1(i, i) = p1(i, i) = 1;
  for (int i = 0; i < nb; ++i) i2(na + i, i) = p2(i, na + i) = 1;
  return {s, AbMorphism(a, s, i1), AbMorphism(b, s, i2), AbMorphism(s, a, p1), AbMorphism(s, b, p2)};
}

FiberProduct fiber_product(const AbMorphism& f, const AbMorphism& h) {
  if (!same_presentation(f.target(), h.target())) throw UsageError("fiber_product: targets differ");
  DirectSum d = direct_sum(f.source(), h.source());
  IntMatrix m = f.matrix().hcat(h.matrix());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = f.matrix().cols(); j < m.cols(); ++j) m(i, j) = -m(i, j);
  Subgroup k = kernel(AbMorphism(d.group, f.target(), m));
  return {k.group, k.inclusion.then(d.pr1), k.inclusion.then(d.pr2)};
}

BilinearGroup::BilinearGroup(Kind kind, const FpAbelianGroup& a, const FpAbelianGroup& b)
    : kind_(kind), ga_(a.num_generators()), gb_(b.num_generators()) {
  if (kind != Kind::Tensor && !same_presentation(a, b)) throw UsageError("square of two different groups");
  int n = 0;
  switch (kind_) {
    case Kind::Tensor: n = ga_ * gb_; break;
    case Kind::Wedge: n = ga_ * (ga_ - 1) / 2; break;
    case Kind::Sym2: n = ga_ * (ga_ + 1) / 2; break;
  }
  std::vector<Vec> rels;
  const IntMatrix& ra = a.relations();
  const IntMatrix& rb = b.relations();
  for (int c = 0; c < ra.cols(); ++c)
    for (int j = 0; j < gb_; ++j) {
      Vec v = zero_vec(n);
      for (int i = 0; i < ga_; ++i)
        if (sgn(ra(i, c)) != 0) add_pair(v, i, j, ra(i, c));
      if (!rsc::is_zero(v)) rels.push_back(std::move(v));
    }
  if (kind_ == Kind::Tensor) {
    for (int c = 0; c < rb.cols(); ++c)
      for (int i = 0; i < ga_; ++i) {
        Vec v = zero_vec(n);
        for (int j = 0; j < gb_; ++j)
          if (sgn(rb(j, c)) != 0) add_pair(v, i, j, rb(j, c));
        if (!rsc::is_zero(v)) rels.push_back(std::move(v));
      }
  }
  if (kind_ == Kind::Sym2) {
    for (int i = 0; i < ga_; ++i) {
      Vec v = zero_vec(n);
      add_pair(v, i, i, BigInt(2));
      rels.push_back(std::move(v));
    }
  }
  group_ = FpAbelianGroup(n, IntMatrix::from_columns(n, rels));
}

void BilinearGroup::add_pair(Vec& out, int i, int j, const BigInt& c) const {
  auto tri = [this](int lo, int hi, bool strict) {
    // index of (lo, hi) in row-major upper triangle
    int before = strict ? lo * (2 * ga_ - lo - 1) / 2 : lo * (2 * ga_ - lo + 1) / 2;
    return before + (hi - lo - (strict ? 1 : 0));
  };
  switch (kind_) {
    case Kind::Tensor: out[i * gb_ + j] += c; break;
    case Kind::Wedge:
      if (i < j)
        out[tri(i, j, true)] += c;
      else if (i > j)
        out[tri(j, i, true)] -= c;
      break;
    case Kind::Sym2:
      if (i <= j)
        out[tri(i, j, false)] += c;
      else
        out[tri(j, i, false)] -= c;
      break;
  }
}

Vec BilinearGroup::eval(const Vec& x, const Vec& y) const {
  if (static_cast<int>(x.size()) != ga_ || static_cast<int>(y.size()) != gb_)
    throw UsageError("bilinear evaluation: wrong coordinate count");
  Vec out = zero_vec(group_.num_generators());
  for (int i = 0; i < ga_; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < gb_; ++j)
      if (sgn(y[j]) != 0) add_pair(out, i, j, x[i] * y[j]);
  }
  return out;
}

BilinearGroup tensor(const FpAbelianGroup& a, const FpAbelianGroup& b) {
  return BilinearGroup(BilinearGroup::Kind::Tensor, a, b);
}
BilinearGroup wedge_square(const FpAbelianGroup& a) { return BilinearGroup(BilinearGroup::Kind::Wedge, a, a); }
BilinearGroup sym2_square(const FpAbelianGroup& a) { return BilinearGroup(BilinearGroup::Kind::Sym2, a, a); }

std::optional<Vec> preimage(const AbMorphism& f, const Vec& y) {
  const int s = f.source().num_generators();
  IntMatrix a = f.matrix().hcat(f.target().relations());
  SmithForm snf = smith_normal_form(a, {true, true});
  Vec w = snf.U * y;
  Vec z = zero_vec(a.cols());
  for (int i = 0; i < static_cast<int>(w.size()); ++i) {
    if (i < snf.rank) {
      if (w[i] % snf.diagonal[i] != 0) return std::nullopt;
      z[i] = w[i] / snf.diagonal[i];
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  Vec full = snf.V * z;
  return Vec(full.begin(), full.begin() + s);
}

}  // namespace rsc
