#include "rsc/matrix.hpp"

#include <algorithm>
#include <utility>

#include "rsc/errors.hpp"

namespace rsc {

std::int64_t to_i64(const BigInt& x) {
  if (!x.fits_slong_p()) throw OverflowError("integer does not fit in 64 bits: " + x.get_str());
  return x.get_si();
}

Vec zero_vec(std::size_t n) { return Vec(n, BigInt(0)); }

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return sgn(x) == 0; });
}

IntMatrix::IntMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, BigInt(0)) {
  if (rows < 0 || cols < 0) throw UsageError("negative matrix dimension");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  IntMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw UsageError("ragged matrix rows");
    int j = 0;
    for (long v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

IntMatrix IntMatrix::from_columns(int rows, const std::vector<Vec>& cols) {
  IntMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols_; ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw UsageError("column length mismatch");
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::from_triplets(int rows, int cols,
                                   const std::vector<std::tuple<int, int, BigInt>>& entries) {
  IntMatrix m(rows, cols);
  for (const auto& [r, c, v] : entries) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw UsageError("triplet out of range");
    m(r, c) += v;
  }
  return m;
}

Vec IntMatrix::column(int c) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

Vec IntMatrix::row(int r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
             data_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_);
}

std::vector<std::tuple<int, int, BigInt>> IntMatrix::triplets() const {
  std::vector<std::tuple<int, int, BigInt>> out;
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < rows_; ++i)
      if (sgn((*this)(i, j)) != 0) out.emplace_back(i, j, (*this)(i, j));
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw UsageError("matrix product shape mismatch");
  IntMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (sgn(a) == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (sgn(o(k, j)) != 0) out(i, j) += a * o(k, j);
    }
  return out;
}

Vec IntMatrix::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw UsageError("matrix-vector shape mismatch");
  Vec out = zero_vec(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k)
      if (sgn(v[k]) != 0 && sgn((*this)(i, k)) != 0) out[i] += (*this)(i, k) * v[k];
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::hcat(const IntMatrix& right) const {
  if (rows_ != right.rows_) throw UsageError("hcat row mismatch");
  IntMatrix out(rows_, cols_ + right.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
    for (int j = 0; j < right.cols_; ++j) out(i, cols_ + j) = right(i, j);
  }
  return out;
}

IntMatrix IntMatrix::columns(int begin, int end) const {
  IntMatrix out(rows_, end - begin);
  for (int i = 0; i < rows_; ++i)
    for (int j = begin; j < end; ++j) out(i, j - begin) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::select_columns(const std::vector<int>& which) const {
  IntMatrix out(rows_, static_cast<int>(which.size()));
  for (int i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < which.size(); ++j) out(i, static_cast<int>(j)) = (*this)(i, which[j]);
  return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

std::vector<BigInt> SmithForm::padded(int n) const {
  std::vector<BigInt> out(n, BigInt(0));
  for (int i = 0; i < n && i < static_cast<int>(diagonal.size()); ++i) out[i] = diagonal[i];
  return out;
}

namespace {

std::vector<Vec> to_rows(const IntMatrix& m) {
  std::vector<Vec> rows(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows[i] = m.row(i);
  return rows;
}

IntMatrix from_rows(const std::vector<Vec>& rows, int cols) {
  IntMatrix m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<Vec> identity_rows(int n) {
  std::vector<Vec> r(n, zero_vec(n));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

struct SmithWork {
  int m, n;
  std::vector<Vec> a;
  bool left, right;
  std::vector<Vec> U, Uinv, V, Vinv;

  // row_i -= k * row_j
  void row_sub(int i, int j, const BigInt& k, int from) {
    for (int c = from; c < n; ++c)
      if (sgn(a[j][c]) != 0) a[i][c] -= k * a[j][c];
    if (left) {
      for (int c = 0; c < m; ++c)
        if (sgn(U[j][c]) != 0) U[i][c] -= k * U[j][c];
      for (int r = 0; r < m; ++r)
        if (sgn(Uinv[r][i]) != 0) Uinv[r][j] += k * Uinv[r][i];
    }
  }
  // col_j -= k * col_i
  void col_sub(int j, int i, const BigInt& k, int from) {
    for (int r = from; r < m; ++r)
      if (sgn(a[r][i]) != 0) a[r][j] -= k * a[r][i];
    if (right) {
      for (int r = 0; r < n; ++r)
        if (sgn(V[r][i]) != 0) V[r][j] -= k * V[r][i];
      for (int c = 0; c < n; ++c)
        if (sgn(Vinv[j][c]) != 0) Vinv[i][c] += k * Vinv[j][c];
    }
  }
  void swap_rows(int i, int j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (left) {
      std::swap(U[i], U[j]);
      for (int r = 0; r < m; ++r) std::swap(Uinv[r][i], Uinv[r][j]);
    }
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    if (right) {
      for (int r = 0; r < n; ++r) std::swap(V[r][i], V[r][j]);
      std::swap(Vinv[i], Vinv[j]);
    }
  }
  void negate_row(int i) {
    for (auto& x : a[i]) x = -x;
    if (left) {
      for (auto& x : U[i]) x = -x;
      for (int r = 0; r < m; ++r) Uinv[r][i] = -Uinv[r][i];
    }
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& mat, SmithOptions opts) {
  SmithWork w{mat.rows(), mat.cols(), to_rows(mat), opts.left, opts.right, {}, {}, {}, {}};
  const int m = w.m, n = w.n;
  if (w.left) {
    w.U = identity_rows(m);
    w.Uinv = identity_rows(m);
  }
  if (w.right) {
    w.V = identity_rows(n);
    w.Vinv = identity_rows(n);
  }
  SmithForm out;
  const int k = std::min(m, n);
  out.diagonal.assign(k, BigInt(0));
  BigInt q;
  int t = 0;
  for (; t < k; ++t) {
    int bi = -1, bj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (sgn(w.a[i][j]) != 0 && (bi < 0 || mpz_cmpabs(w.a[i][j].get_mpz_t(), w.a[bi][bj].get_mpz_t()) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    w.swap_rows(t, bi);
    w.swap_cols(t, bj);
    while (true) {
      bool dirty = false;
      for (int i = t + 1; i < m; ++i) {
        if (sgn(w.a[i][t]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a[i][t].get_mpz_t(), w.a[t][t].get_mpz_t());
        if (sgn(q) != 0) w.row_sub(i, t, q, t);
        if (sgn(w.a[i][t]) != 0) dirty = true;
      }
      for (int j = t + 1; j < n; ++j) {
        if (sgn(w.a[t][j]) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), w.a[t][j].get_mpz_t(), w.a[t][t].get_mpz_t());
        if (sgn(q) != 0) w.col_sub(j, t, q, t);
        if (sgn(w.a[t][j]) != 0) dirty = true;
      }
      if (dirty) {
        int pi = t, pj = t;
        for (int i = t + 1; i < m; ++i)
          if (sgn(w.a[i][t]) != 0 && mpz_cmpabs(w.a[i][t].get_mpz_t(), w.a[pi][pj].get_mpz_t()) < 0) {
            pi = i;
            pj = t;
          }
        for (int j = t + 1; j < n; ++j)
          if (sgn(w.a[t][j]) != 0 && mpz_cmpabs(w.a[t][j].get_mpz_t(), w.a[pi][pj].get_mpz_t()) < 0) {
            pi = t;
            pj = j;
          }
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        continue;
      }
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (sgn(w.a[i][j]) != 0 && !mpz_divisible_p(w.a[i][j].get_mpz_t(), w.a[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      w.row_sub(t, bad, BigInt(-1), t);
    }
    if (sgn(w.a[t][t]) < 0) w.negate_row(t);
    out.diagonal[t] = w.a[t][t];
  }
  out.rank = t;
  if (w.left) {
    out.U = from_rows(w.U, m);
    out.Uinv = from_rows(w.Uinv, m);
  }
  if (w.right) {
    out.V = from_rows(w.V, n);
    out.Vinv = from_rows(w.Vinv, n);
  }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m, {.left = false, .right = true});
  if (m.cols() == 0) return IntMatrix(0, 0);
  return s.V.columns(s.rank, m.cols());
}

Lattice::Lattice(int dim, const IntMatrix& gens) : dim_(dim) {
  if (gens.rows() != dim) throw UsageError("lattice generator dimension mismatch");
  if (gens.cols() == 0) {
    U_ = IntMatrix::identity(dim);
    basis_ = IntMatrix(dim, 0);
    return;
  }
  SmithForm s = smith_normal_form(gens, {.left = true, .right = false});
  U_ = std::move(s.U);
  d_.assign(s.diagonal.begin(), s.diagonal.begin() + s.rank);
  basis_ = IntMatrix(dim, s.rank);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < s.rank; ++j) basis_(i, j) = s.Uinv(i, j) * d_[j];
}

bool Lattice::coordinates(const Vec& x, Vec& out) const {
  Vec c = U_ * x;
  out.assign(d_.size(), BigInt(0));
  for (int i = 0; i < dim_; ++i) {
    if (i < rank()) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), d_[i].get_mpz_t())) return false;
      mpz_divexact(out[i].get_mpz_t(), c[i].get_mpz_t(), d_[i].get_mpz_t());
    } else if (sgn(c[i]) != 0) {
      return false;
    }
  }
  return true;
}

bool Lattice::contains(const Vec& x) const {
  Vec tmp;
  return coordinates(x, tmp);
}

void Echelon::insert(Vec v) {
  if (static_cast<int>(v.size()) != n_) throw UsageError("echelon vector length mismatch");
  BigInt g, s, t, a, b;
  for (int p = 0; p < n_; ++p) {
    if (sgn(v[p]) == 0) continue;
    int r = by_pivot_[p];
    if (r < 0) {
      if (sgn(v[p]) < 0)
        for (auto& x : v) x = -x;
      by_pivot_[p] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(v));
      return;
    }
    Vec& row = rows_[r];
    if (mpz_divisible_p(v[p].get_mpz_t(), row[p].get_mpz_t())) {
      mpz_divexact(a.get_mpz_t(), v[p].get_mpz_t(), row[p].get_mpz_t());
      for (int j = p; j < n_; ++j)
        if (sgn(row[j]) != 0) v[j] -= a * row[j];
      continue;
    }
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[p].get_mpz_t(), v[p].get_mpz_t());
    mpz_divexact(a.get_mpz_t(), v[p].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), row[p].get_mpz_t(), g.get_mpz_t());
    for (int j = p; j < n_; ++j) {
      BigInt nr = s * row[j] + t * v[j];
      BigInt nv = a * row[j] - b * v[j];
      row[j] = std::move(nr);
      v[j] = std::move(nv);
    }
    if (sgn(row[p]) < 0)
      for (auto& x : row) x = -x;
  }
}

IntMatrix Echelon::basis() const {
  IntMatrix out(n_, rank());
  int c = 0;
  for (int p = 0; p < n_; ++p) {
    if (by_pivot_[p] < 0) continue;
    const Vec& row = rows_[by_pivot_[p]];
    for (int i = 0; i < n_; ++i) out(i, c) = row[i];
    ++c;
  }
  return out;
}

}  // namespace rsc
