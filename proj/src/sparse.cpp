#include "rsc/sparse.hpp"

#include <algorithm>
#include <queue>

#include "rsc/errors.hpp"

namespace rsc {

SparseVec canonical_sparse(SparseVec v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [r, x] : v) {
    if (!out.empty() && out.back().first == r) {
      if (__builtin_add_overflow(out.back().second, x, &out.back().second))
        throw OverflowError("sparse entry overflow");
    } else {
      out.emplace_back(r, x);
    }
    if (!out.empty() && out.back().second == 0) out.pop_back();
  }
  return out;
}

Vec dense_from_sparse(const SparseVec& v, int n) {
  Vec out = zero_vec(n);
  for (const auto& [r, x] : v) out.at(r) = big(x);
  return out;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

int SparseMatrix::add_column(SparseVec col) {
  cols_.push_back(canonical_sparse(std::move(col)));
  for (const auto& e : cols_.back())
    if (e.first < 0 || e.first >= rows_) throw UsageError("sparse row index out of range");
  return static_cast<int>(cols_.size()) - 1;
}

void SparseMatrix::set_column(int c, SparseVec col) {
  cols_.at(c) = canonical_sparse(std::move(col));
  for (const auto& e : cols_[c])
    if (e.first < 0 || e.first >= rows_) throw UsageError("sparse row index out of range");
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& b) const {
  if (cols() != b.rows()) throw UsageError("sparse product shape mismatch");
  SparseMatrix out(rows_);
  for (int j = 0; j < b.cols(); ++j) {
    SparseVec acc;
    for (const auto& [k, bv] : b.column(j))
      for (const auto& [i, av] : cols_[k]) {
        std::int64_t p;
        if (__builtin_mul_overflow(av, bv, &p)) throw OverflowError("sparse product overflow");
        acc.emplace_back(i, p);
      }
    out.add_column(std::move(acc));
  }
  return out;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.empty(); });
}

IntMatrix SparseMatrix::to_dense() const {
  IntMatrix m(rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (const auto& [i, v] : cols_[j]) m(i, j) = big(v);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m) {
  SparseMatrix s(m.rows());
  for (int j = 0; j < m.cols(); ++j) {
    SparseVec c;
    for (int i = 0; i < m.rows(); ++i)
      if (sgn(m(i, j)) != 0) c.emplace_back(i, to_i64(m(i, j)));
    s.add_column(std::move(c));
  }
  return s;
}

namespace {

// Scalar helpers shared by the int64 fast path and the GMP path.
inline bool s_is_unit(std::int64_t x) { return x == 1 || x == -1; }
inline bool s_is_unit(const BigInt& x) { return x == 1 || x == -1; }
inline bool s_is_zero(std::int64_t x) { return x == 0; }
inline bool s_is_zero(const BigInt& x) { return sgn(x) == 0; }

inline std::int64_t s_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("elimination overflow");
  return r;
}
inline BigInt s_mul(const BigInt& a, const BigInt& b) { return a * b; }
// a - k*b
inline std::int64_t s_fms(std::int64_t a, std::int64_t k, std::int64_t b) {
  std::int64_t r = s_mul(k, b);
  if (__builtin_sub_overflow(a, r, &r)) throw OverflowError("elimination overflow");
  return r;
}
inline BigInt s_fms(const BigInt& a, const BigInt& k, const BigInt& b) { return a - k * b; }
inline BigInt s_big(std::int64_t x) { return big(x); }
inline BigInt s_big(const BigInt& x) { return x; }

template <class S>
struct Col {
  std::vector<int> r;
  std::vector<S> v;
  std::size_t size() const { return r.size(); }
};

// c1 <- c1 - k * c2; rows new to c1 are appended to fresh.
template <class S>
void col_axpy(Col<S>& c1, const S& k, const Col<S>& c2, Col<S>& tmp, std::vector<int>* fresh) {
  tmp.r.clear();
  tmp.v.clear();
  std::size_t i = 0, j = 0;
  while (i < c1.r.size() || j < c2.r.size()) {
    if (j == c2.r.size() || (i < c1.r.size() && c1.r[i] < c2.r[j])) {
      tmp.r.push_back(c1.r[i]);
      tmp.v.push_back(std::move(c1.v[i]));
      ++i;
    } else if (i == c1.r.size() || c2.r[j] < c1.r[i]) {
      S x = s_fms(S(0), k, c2.v[j]);
      tmp.r.push_back(c2.r[j]);
      tmp.v.push_back(std::move(x));
      if (fresh) fresh->push_back(c2.r[j]);
      ++j;
    } else {
      S x = s_fms(c1.v[i], k, c2.v[j]);
      if (!s_is_zero(x)) {
        tmp.r.push_back(c1.r[i]);
        tmp.v.push_back(std::move(x));
      }
      ++i;
      ++j;
    }
  }
  std::swap(c1, tmp);
}

template <class S>
Col<S> from_sparse(const SparseVec& v) {
  Col<S> c;
  for (const auto& [r, x] : v) {
    c.r.push_back(r);
    c.v.push_back(S(x));
  }
  return c;
}

template <class S>
struct Elimination {
  std::vector<int> piv_row;
  std::vector<S> piv_unit;
  std::vector<Col<S>> piv_col;
  std::vector<Col<S>> residual, residual_trans;
  std::vector<Col<S>> kernel;  // transforms of columns reduced to zero
};

// Column elimination on unit pivots, sparsest columns first.
template <class S>
Elimination<S> eliminate(int nrows, const std::vector<SparseVec>& input, bool track) {
  const int n = static_cast<int>(input.size());
  std::vector<Col<S>> cols(n), trans;
  std::vector<char> active(n, 1);
  std::vector<std::vector<int>> row_cols(nrows);
  Elimination<S> out;
  if (track) trans.resize(n);
  using Item = std::pair<std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (int j = 0; j < n; ++j) {
    cols[j] = from_sparse<S>(input[j]);
    if (track) {
      trans[j].r = {j};
      trans[j].v = {S(1)};
    }
    if (cols[j].size() == 0) {
      active[j] = 0;
      if (track) out.kernel.push_back(std::move(trans[j]));
      continue;
    }
    for (int r : cols[j].r) row_cols[r].push_back(j);
    pq.emplace(cols[j].size(), j);
  }
  Col<S> tmp;
  std::vector<int> fresh;
  while (!pq.empty()) {
    auto [nnz, c] = pq.top();
    pq.pop();
    if (!active[c] || nnz != cols[c].size()) continue;
    int best = -1;
    for (std::size_t i = 0; i < cols[c].size(); ++i)
      if (s_is_unit(cols[c].v[i]) &&
          (best < 0 || row_cols[cols[c].r[i]].size() < row_cols[cols[c].r[best]].size()))
        best = static_cast<int>(i);
    if (best < 0) continue;
    const int prow = cols[c].r[best];
    const S unit = cols[c].v[best];
    std::vector<int> users = std::move(row_cols[prow]);
    row_cols[prow].clear();
    for (int j : users) {
      if (j == c || !active[j]) continue;
      auto it = std::lower_bound(cols[j].r.begin(), cols[j].r.end(), prow);
      if (it == cols[j].r.end() || *it != prow) continue;
      S k = s_mul(cols[j].v[it - cols[j].r.begin()], unit);
      fresh.clear();
      col_axpy(cols[j], k, cols[c], tmp, &fresh);
      for (int r : fresh) row_cols[r].push_back(j);
      if (track) col_axpy(trans[j], k, trans[c], tmp, nullptr);
      if (cols[j].size() == 0) {
        active[j] = 0;
        if (track) out.kernel.push_back(std::move(trans[j]));
      } else {
        pq.emplace(cols[j].size(), j);
      }
    }
    active[c] = 0;
    out.piv_row.push_back(prow);
    out.piv_unit.push_back(unit);
    out.piv_col.push_back(std::move(cols[c]));
  }
  for (int j = 0; j < n; ++j) {
    if (!active[j]) continue;
    out.residual.push_back(std::move(cols[j]));
    if (track) out.residual_trans.push_back(std::move(trans[j]));
  }
  return out;
}

// Runs the int64 path first and falls back to GMP on overflow.
template <class F>
auto with_fallback(F&& f) {
  try {
    return f(std::int64_t{});
  } catch (const OverflowError&) {
    return f(BigInt{});
  }
}

template <class S>
std::vector<int> touched_rows(const std::vector<Col<S>>& cols) {
  std::vector<int> rows;
  for (const auto& c : cols) rows.insert(rows.end(), c.r.begin(), c.r.end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

template <class S>
Vec compress(const Col<S>& c, const std::vector<int>& rows) {
  Vec v = zero_vec(rows.size());
  for (std::size_t i = 0; i < c.r.size(); ++i) {
    auto pos = std::lower_bound(rows.begin(), rows.end(), c.r[i]) - rows.begin();
    v[pos] = s_big(c.v[i]);
  }
  return v;
}

}  // namespace

SparseInvariants sparse_invariant_factors(const SparseMatrix& m) {
  std::vector<SparseVec> cols(m.cols());
  for (int j = 0; j < m.cols(); ++j) cols[j] = m.column(j);
  return with_fallback([&](auto tag) {
    using S = decltype(tag);
    Elimination<S> e = eliminate<S>(m.rows(), cols, false);
    SparseInvariants out;
    out.rank = static_cast<int>(e.piv_row.size());
    std::vector<int> rows = touched_rows(e.residual);
    Echelon ech(static_cast<int>(rows.size()));
    for (const auto& c : e.residual) ech.insert(compress(c, rows));
    SmithForm s = smith_normal_form(ech.basis());
    out.rank += s.rank;
    for (int i = 0; i < s.rank; ++i)
      if (s.diagonal[i] > 1) out.nonunit.push_back(s.diagonal[i]);
    return out;
  });
}

std::vector<SparseVec> sparse_kernel(const SparseMatrix& m) {
  std::vector<SparseVec> cols(m.cols());
  for (int j = 0; j < m.cols(); ++j) cols[j] = m.column(j);
  auto to_sparse = [](const auto& c) {
    SparseVec v;
    for (std::size_t i = 0; i < c.r.size(); ++i) v.emplace_back(c.r[i], to_i64(s_big(c.v[i])));
    return v;
  };
  return with_fallback([&](auto tag) {
    using S = decltype(tag);
    Elimination<S> e = eliminate<S>(m.rows(), cols, true);
    std::vector<SparseVec> out;
    for (const auto& k : e.kernel) out.push_back(to_sparse(k));
    if (e.residual.empty()) return out;
    std::vector<int> rows = touched_rows(e.residual);
    std::vector<Vec> dense;
    for (const auto& c : e.residual) dense.push_back(compress(c, rows));
    IntMatrix k = integer_kernel(IntMatrix::from_columns(static_cast<int>(rows.size()), dense));
    for (int l = 0; l < k.cols(); ++l) {
      std::vector<std::pair<int, BigInt>> acc;
      for (int i = 0; i < k.rows(); ++i) {
        if (sgn(k(i, l)) == 0) continue;
        const auto& t = e.residual_trans[i];
        for (std::size_t p = 0; p < t.r.size(); ++p) acc.emplace_back(t.r[p], k(i, l) * s_big(t.v[p]));
      }
      std::sort(acc.begin(), acc.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      SparseVec v;
      for (std::size_t p = 0; p < acc.size();) {
        BigInt sum = 0;
        int r = acc[p].first;
        for (; p < acc.size() && acc[p].first == r; ++p) sum += acc[p].second;
        if (sgn(sum) != 0) v.emplace_back(r, to_i64(sum));
      }
      out.push_back(std::move(v));
    }
    return out;
  });
}

Subquotient::Subquotient(int ambient, const SparseMatrix& relations, const SparseMatrix& map)
    : ambient_(ambient), map_(map) {
  if (relations.rows() != ambient || map.cols() != ambient)
    throw UsageError("subquotient: shapes do not match the ambient dimension");
  std::vector<SparseVec> cols(relations.cols());
  for (int j = 0; j < relations.cols(); ++j) cols[j] = relations.column(j);

  std::vector<Vec> residual;
  with_fallback([&](auto tag) {
    using S = decltype(tag);
    Elimination<S> e = eliminate<S>(ambient, cols, false);
    piv_row_ = e.piv_row;
    piv_unit_.clear();
    piv_col_.clear();
    for (std::size_t k = 0; k < e.piv_row.size(); ++k) {
      piv_unit_.push_back(s_is_unit(e.piv_unit[k]) && s_big(e.piv_unit[k]) == 1 ? 1 : -1);
      std::vector<std::pair<int, BigInt>> c;
      for (std::size_t i = 0; i < e.piv_col[k].r.size(); ++i)
        c.emplace_back(e.piv_col[k].r[i], s_big(e.piv_col[k].v[i]));
      piv_col_.push_back(std::move(c));
    }
    std::vector<char> pivoted(ambient, 0);
    for (int r : piv_row_) pivoted[r] = 1;
    free_rows_.clear();
    free_pos_.assign(ambient, -1);
    for (int r = 0; r < ambient; ++r)
      if (!pivoted[r]) {
        free_pos_[r] = static_cast<int>(free_rows_.size());
        free_rows_.push_back(r);
      }
    residual.clear();
    for (const auto& c : e.residual) {
      Vec v = zero_vec(free_rows_.size());
      for (std::size_t i = 0; i < c.r.size(); ++i) v[free_pos_[c.r[i]]] = s_big(c.v[i]);
      residual.push_back(std::move(v));
    }
    return 0;
  });

  const int s = static_cast<int>(free_rows_.size());
  Echelon ech(s);
  for (auto& v : residual) ech.insert(std::move(v));
  IntMatrix rel_basis = ech.basis();

  // map restricted to the free coordinates, on the target rows it touches
  std::vector<int> trows;
  for (int r : free_rows_)
    for (const auto& e : map_.column(r)) trows.push_back(e.first);
  std::sort(trows.begin(), trows.end());
  trows.erase(std::unique(trows.begin(), trows.end()), trows.end());
  IntMatrix phi(static_cast<int>(trows.size()), s);
  for (int j = 0; j < s; ++j)
    for (const auto& [r, x] : map_.column(free_rows_[j])) {
      auto pos = std::lower_bound(trows.begin(), trows.end(), r) - trows.begin();
      phi(static_cast<int>(pos), j) = big(x);
    }
  kernel_basis_ = trows.empty() ? IntMatrix::identity(s) : integer_kernel(phi);
  kernel_lattice_ = Lattice(s, kernel_basis_);
  // coordinates() is relative to the lattice's own basis, so use it everywhere
  kernel_basis_ = kernel_lattice_.basis();
  const int t = kernel_basis_.cols();

  IntMatrix y(t, rel_basis.cols());
  Vec c;
  for (int j = 0; j < rel_basis.cols(); ++j) {
    if (!kernel_lattice_.coordinates(rel_basis.column(j), c))
      throw MathError("subquotient: relations do not lie in the kernel of the map");
    for (int i = 0; i < t; ++i) y(i, j) = c[i];
  }
  SmithForm sf = smith_normal_form(y, {.left = true, .right = false});
  U_ = sf.U;
  diag_ = sf.padded(t);
  std::vector<BigInt> torsion;
  int free_count = 0;
  for (int i = 0; i < t; ++i) {
    if (diag_[i] == 1) continue;
    kept_.push_back(i);
  }
  // generators in kept_ order: torsion first (SNF order), then free
  IntMatrix rel(static_cast<int>(kept_.size()), 0);
  std::vector<Vec> rcols;
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    const BigInt& d = diag_[kept_[k]];
    if (sgn(d) == 0) {
      ++free_count;
      continue;
    }
    Vec col = zero_vec(kept_.size());
    col[k] = d;
    rcols.push_back(std::move(col));
  }
  group_ = FpAbelianGroup(static_cast<int>(kept_.size()),
                          IntMatrix::from_columns(static_cast<int>(kept_.size()), rcols));
  for (int idx : kept_) {
    Vec x = zero_vec(s);
    for (int i = 0; i < s; ++i)
      for (int l = 0; l < t; ++l)
        if (sgn(kernel_basis_(i, l)) != 0 && sgn(sf.Uinv(l, idx)) != 0) x[i] += kernel_basis_(i, l) * sf.Uinv(l, idx);
    Vec v = zero_vec(ambient_);
    for (int i = 0; i < s; ++i) v[free_rows_[i]] = x[i];
    reps_.push_back(std::move(v));
  }
  (void)free_count;
}

Vec Subquotient::reduce(Vec v) const {
  BigInt f;
  for (std::size_t k = 0; k < piv_row_.size(); ++k) {
    const BigInt& a = v[piv_row_[k]];
    if (sgn(a) == 0) continue;
    f = piv_unit_[k] == 1 ? a : BigInt(-a);
    for (const auto& [r, x] : piv_col_[k]) v[r] -= f * x;
  }
  Vec x = zero_vec(free_rows_.size());
  for (std::size_t i = 0; i < free_rows_.size(); ++i) x[i] = v[free_rows_[i]];
  return x;
}

bool Subquotient::is_cycle(const Vec& chain) const {
  if (static_cast<int>(chain.size()) != ambient_) return false;
  std::vector<BigInt> out(map_.rows(), BigInt(0));
  for (int j = 0; j < ambient_; ++j) {
    if (sgn(chain[j]) == 0) continue;
    for (const auto& [r, x] : map_.column(j)) out[r] += chain[j] * x;
  }
  return rsc::is_zero(out);
}

Vec Subquotient::classify(const Vec& cycle) const {
  if (!is_cycle(cycle)) throw MathError("classify: chain is not a cycle");
  Vec x = reduce(cycle);
  Vec y;
  if (!kernel_lattice_.coordinates(x, y)) throw MathError("classify: reduced chain outside kernel lattice");
  Vec c = U_ * y;
  Vec out;
  for (int idx : kept_) {
    BigInt v = c[idx];
    if (sgn(diag_[idx]) != 0) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), diag_[idx].get_mpz_t());
    out.push_back(v);
  }
  return out;
}

Vec Subquotient::classify(const SparseVec& cycle) const { return classify(dense_from_sparse(cycle, ambient_)); }

SparseInvariants cached_invariant_factors(const SparseMatrix& m, InvariantCache* cache) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  if (cache) {
    if (auto hit = cache->get(m)) return *hit;
  }
  SparseInvariants inv = sparse_invariant_factors(m);
  if (cache) cache->put(m, inv);
  return inv;
}

}  // namespace rsc
