#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsc/check.hpp"
#include "rsc/ring.hpp"
#include "rsc/sl2.hpp"
#include "rsc/sparse.hpp"

namespace rsc {

// Z[X] for a finite left G-set X; action[g][x] = g x.
struct PermModule {
  int size = 1;
  std::vector<std::vector<int>> action;

  static PermModule trivial(const GroupTable& g);
  // Z[G/H] on left cosets; sub lists the elements of H as indices in g.
  static PermModule cosets(const GroupTable& g, const std::vector<int>& sub);
  // Throws MathError unless this is a left action of g.
  void check(const GroupTable& g) const;
};

struct HomologyOptions {
  int h2_order = 120;  // largest |G| for H_2
  int h3_order = 48;   // largest |G| for H_3
  bool override = false;
  InvariantCache* cache = nullptr;
};

// Throws CapExceeded when H_n of a group of this order is over the caps; n > 3 is a usage error.
void check_homology_caps(int order, int n, const HomologyOptions& caps);

constexpr long kDefaultCellCap = 8000000;

// Normalized bar complex C_n(G) (x)_G M, n <= top. Cells are (g_1, ..., g_n; x) with g_i != 1.
// d[g_1|...|g_n] x = [g_2|...|g_n] g_1^-1 x + sum (-1)^i [..|g_i g_{i+1}|..] x + (-1)^n [g_1|...|g_{n-1}] x
class BarComplex {
 public:
  BarComplex() = default;
  BarComplex(const GroupTable& g, int top, PermModule m, long cap = kDefaultCellCap);
  BarComplex(const GroupTable& g, int top) : BarComplex(g, top, PermModule::trivial(g)) {}
  // The complex keeps a pointer to its group.
  BarComplex(const GroupTable&&, int, PermModule, long = kDefaultCellCap) = delete;
  BarComplex(const GroupTable&&, int) = delete;

  const GroupTable& group() const { return *g_; }
  const PermModule& module() const { return m_; }
  int top() const { return top_; }
  long rank(int n) const;
  // -1 when some entry is the identity
  long index_of(const std::vector<int>& elems, int x = 0) const;
  std::pair<std::vector<int>, int> cell(int n, long idx) const;
  // n >= 1: C_n -> C_{n-1}; n == 0: the zero map to a rank-0 module
  const SparseMatrix& boundary(int n) const { return d_.at(n); }
  bool boundaries_compose_to_zero() const;

 private:
  const GroupTable* g_ = nullptr;
  PermModule m_;
  int top_ = 0;
  long k_ = 0;             // |G| - 1
  std::vector<int> pos_;   // element -> position among non-identity elements, -1 for the identity
  std::vector<int> elem_;  // position -> element
  std::vector<SparseMatrix> d_;
};

// H_n of a chain complex from the ranks and invariant factors of its boundaries.
FpAbelianGroup homology_from_boundaries(long rank_n, const SparseMatrix& d_n, const SparseMatrix& d_n1,
                                        InvariantCache* cache = nullptr);

// H_0 .. H_top of G with coefficients in M, with classes of cycles.
class GroupHomology {
 public:
  GroupHomology(const GroupTable& g, int top, const PermModule& m, const HomologyOptions& caps = {});
  GroupHomology(const GroupTable& g, int top, const HomologyOptions& caps = {})
      : GroupHomology(g, top, PermModule::trivial(g), caps) {}
  GroupHomology(const GroupTable&&, int, const PermModule&, const HomologyOptions& = {}) = delete;
  GroupHomology(const GroupTable&&, int, const HomologyOptions& = {}) = delete;

  const BarComplex& complex() const { return c_; }
  int top() const { return static_cast<int>(h_.size()) - 1; }
  const FpAbelianGroup& h(int n) const { return h_.at(n).group(); }
  Vec classify(int n, const Vec& cycle) const { return h_.at(n).classify(cycle); }
  const Subquotient& subquotient(int n) const { return h_.at(n); }

 private:
  BarComplex c_;
  std::vector<Subquotient> h_;
};

// H_n(G; M) via invariant factors only, without classes.
FpAbelianGroup group_homology(const GroupTable& g, int n, const HomologyOptions& caps = {});
FpAbelianGroup group_homology(const GroupTable& g, int n, const PermModule& m, const HomologyOptions& caps = {});

struct LesPosition {
  std::string label;  // the group at which exactness is checked
  bool exact = false;
};

struct LesReport {
  std::vector<FpAbelianGroup> sub, ambient, relative;  // H_0 .. H_through
  std::vector<LesPosition> positions;
  bool all_exact() const;
};

// The quotient of C(G) (x)_G M by C(G') (x)_G' M', where M' = Z[X'] for a G'-stable subset X'.
// Both groups must outlive the pair.
class PairComplex {
 public:
  PairComplex(const GroupTable& g, const GroupTable& sub, int top, const PermModule& m,
              const std::vector<int>& sub_points, const HomologyOptions& caps = {});
  PairComplex(const GroupTable& g, const GroupTable& sub, int top, const HomologyOptions& caps = {});

  const BarComplex& ambient() const { return amb_; }
  const BarComplex& sub() const { return sub_; }
  int top() const { return amb_.top(); }
  // sub cell -> ambient cell
  const std::vector<long>& inclusion(int n) const { return inc_.at(n); }
  // ambient cells outside the image, in order
  const std::vector<long>& quotient_cells(int n) const { return qcells_.at(n); }
  const SparseMatrix& quotient_boundary(int n) const { return qd_.at(n); }

  FpAbelianGroup relative(int n) const;
  // H_n(G') -> H_n(G) -> H_n(G,G') -> H_{n-1}(G') ... -> H_0(G,G') -> 0 from degree `through` down
  LesReport long_exact_sequence(int through) const;

 private:
  InvariantCache* cache_ = nullptr;
  BarComplex amb_, sub_;
  std::vector<std::vector<long>> inc_, qcells_, qpos_;
  std::vector<SparseMatrix> qd_;
};

// c(g, g') = [g|g'] - [g'|g] in H_2(G); throws MathError unless g and g' commute.
Vec commutator_class(const GroupHomology& h, int g, int g2);
// c(E12(a), diag(b, b)) in H_2(B(A)); b must lie in mu_2(A).
Vec x_class(const FiniteRing& r, const GroupHomology& hb, Elem a, Elem b);

struct SGroupReport {
  int n = 0;
  FpAbelianGroup s, hb, ht;  // S_n = H_n(B, T), H_n(B), H_n(T)
  bool split = false;        // H_n(B) = H_n(T) + S_n as abstract groups
};

SGroupReport s_group(const FiniteRing& r, int n, const HomologyOptions& caps = {});

// H_1(SM_2) against the extension by G_A; H_2(SM_2) against A* ^ A* / A* ^ mu_2 when mu_2 = {1, -1}.
std::vector<Check> sm2_checks(const FiniteRing& r, const HomologyOptions& caps = {});

struct Hypothesis {
  std::string name;
  std::optional<bool> holds;  // empty: not computable within the caps
  std::string detail;
};

struct RelativeSl2Report {
  std::vector<FpAbelianGroup> groups;  // H_0 .. H_n(SL_2, SM_2)
  FpAbelianGroup witt;
  std::optional<bool> matches_witt;   // set when n >= 2
  std::vector<Hypothesis> hypotheses;
  LesReport les;
  Check conclusion;  // pass/fail when every hypothesis holds, reported otherwise
};

RelativeSl2Report relative_sl2_sm2(const FiniteRing& r, int n = 2, const HomologyOptions& caps = {});

}  // namespace rsc
