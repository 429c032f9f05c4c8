#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rsc/grpring.hpp"
#include "rsc/scissors.hpp"
#include "rsc/sl2.hpp"
#include "rsc/sparse.hpp"

namespace rsc {

// Lines <v> of unimodular vectors in A^2. The canonical vector is the least (v1 c, v2 c) over units c,
// so infinity = (1,0), zero = (0,1) and a = (1,a).
class LineSet {
 public:
  explicit LineSet(const FiniteRing& r);

  const FiniteRing& ring() const { return *r_; }
  int size() const { return static_cast<int>(vecs_.size()); }
  std::pair<Elem, Elem> vector(int i) const { return vecs_.at(i); }
  // Line through (u1, u2), or -1 when the vector is not unimodular.
  int line_of(Elem u1, Elem u2) const { return index_[static_cast<std::size_t>(u1) * r_->size() + u2]; }
  int infinity() const { return line_of(r_->one(), 0); }
  int zero() const { return line_of(0, r_->one()); }
  int point(Elem a) const { return line_of(r_->one(), a); }
  int act(const Mat2& g, int line) const;
  // det of canonical vectors
  Elem det(int i, int j) const;
  bool generic(int i, int j) const { return r_->is_unit(det(i, j)); }
  std::string render(int i) const;

 private:
  const FiniteRing* r_;
  std::vector<std::pair<Elem, Elem>> vecs_;
  std::vector<int> index_;
};

constexpr long kDefaultBasisCap = 100000;

// X_0 .. X_top of the complex of generic tuples of lines, with boundaries and the SL_2 action.
class UnimodularComplex {
 public:
  UnimodularComplex(const FiniteRing& r, int top, long cap = kDefaultBasisCap);

  const LineSet& lines() const { return lines_; }
  const FiniteRing& ring() const { return lines_.ring(); }
  int top() const { return top_; }
  long rank(int n) const { return static_cast<long>(codes_.at(n).size()); }
  std::vector<int> tuple(int n, long idx) const;
  long index_of(const std::vector<int>& t) const;  // -1 if not a generic tuple
  // n >= 1: X_n -> X_{n-1}; n == 0: the augmentation X_0 -> Z
  const SparseMatrix& boundary(int n) const { return boundary_.at(n); }
  std::vector<long> permutation(int n, const Mat2& g) const;
  std::string render(int n, long idx) const;
  Vec basis_vector(int n, long idx) const;
  SparseVec act(int n, const Mat2& g, const SparseVec& chain) const;

  bool boundaries_compose_to_zero() const;
  bool action_commutes(const Mat2& g) const;

 private:
  std::uint64_t encode(const std::vector<int>& t) const;

  LineSet lines_;
  int top_;
  std::vector<std::vector<std::uint64_t>> codes_;
  std::vector<SparseMatrix> boundary_;
};

// H_k of the augmented complex X_. -> Z, k <= top - 1.
FpAbelianGroup complex_homology(const UnimodularComplex& x, int k);

struct OrbitDecomposition {
  std::vector<long> orbit_of;  // basis element -> orbit id
  std::vector<long> reps;      // least basis element per orbit
  std::vector<long> sizes;
  std::size_t count() const { return reps.size(); }
};

OrbitDecomposition orbit_decomposition(const UnimodularComplex& x, int n, const std::vector<Mat2>& gens);
// Elements of g fixing the basis tuple.
std::vector<int> stabilizer(const UnimodularComplex& x, int n, long idx, const GroupTable& g);

// Square class of the orbit of a generic triple: <det(v0,v1) det(v1,v2) det(v2,v0)>.
int triple_class(const UnimodularComplex& x, const SquareClassGroup& g, long idx);

// Coinvariant models H_0(SL_2, Z_k) for k = 1, 2.
class DirectModels {
 public:
  DirectModels(const UnimodularComplex& x, const SquareClassGroup& g, const std::vector<Mat2>& gens);

  const FpAbelianGroup& rp() const { return rp_.group(); }
  const FpAbelianGroup& gw() const { return gw_.group(); }
  const AbMorphism& lambda() const { return lambda_; }    // RP -> Z[G_A]
  const AbMorphism& epsilon() const { return epsilon_; }  // GW -> Z
  const Subgroup& i() const { return i_; }                // ker epsilon
  Vec rp_class(const SparseVec& cycle) const { return rp_.classify(cycle); }
  Vec gw_class(const SparseVec& cycle) const { return gw_.classify(cycle); }
  // (inf,0,a) + (0,inf,a) - (inf,0,1) - (0,inf,1)
  SparseVec psi1_chain(Elem a) const;
  Vec psi1(Elem a) const { return rp_class(psi1_chain(a)); }
  // orbit sums of a 2-chain, indexed by square class
  Vec orbit_sums(const SparseVec& chain) const;
  const UnimodularComplex& complex() const { return *x_; }

 private:
  const UnimodularComplex* x_;
  const SquareClassGroup* g_;
  Subquotient rp_, gw_;
  AbMorphism lambda_, epsilon_;
  Subgroup i_;
  std::vector<int> x2_class_;
};

struct ComparisonEntry {
  std::string name;
  bool well_defined = false;
  bool surjective = false;
  bool injective = false;
  std::string source, target;
};

struct ComparisonReport {
  std::vector<ComparisonEntry> entries;  // RP-bar -> RP, GW-bar -> GW, I-bar -> I, I_A/p I_A -> I
};

ComparisonReport compare_presented_direct(const RpBar& rp, const WittData& wd, const DirectModels& dm);

}  // namespace rsc
