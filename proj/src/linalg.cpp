#include "vbent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vbent/errors.hpp"

namespace vbent {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::from_columns(std::span<const CVector> columns) {
  if (columns.empty()) return {};
  const std::size_t rows = columns.front().size();
  CMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error("from_columns: ragged column lengths");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

CVector CMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

CMatrix CMatrix::adjoint() const {
  CMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
  return t;
}

CMatrix CMatrix::conj() const {
  CMatrix t = *this;
  for (auto& x : t.data_) x = std::conj(x);
  return t;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double CMatrix::hermiticity_defect() const {
  if (rows_ != cols_) return INFINITY;
  double d = 0.0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r; c < cols_; ++c)
      d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return d;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw Error("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw Error("matrix shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw Error("matrix product shape mismatch");
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVector operator*(const CMatrix& a, const CVector& x) {
  if (a.cols() != x.size()) throw Error("matrix-vector shape mismatch");
  CVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double norm(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& x : a) s += std::norm(x);
  return std::sqrt(s);
}

Spectrum hermitian_eig(const CMatrix& m, bool want_vectors) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw NotHermitian("hermitian_eig: matrix is not square");
  const double scale = std::max(1.0, m.max_abs());
  if (m.hermiticity_defect() > 1e-10 * scale)
    throw NotHermitian("hermitian_eig: |A - A^dagger| = " + std::to_string(m.hermiticity_defect()));

  // Work on the exactly Hermitian part.
  CMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix{};

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r + 1; c < n; ++c) s += std::norm(a(r, c));
    return std::sqrt(2.0 * s);
  };
  const double total = std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_norm() <= 1e-15 * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double bmag = std::abs(b);
        if (bmag <= 1e-300) continue;
        if (sweep > 3 && bmag <= 1e-18 * (std::abs(a(p, p)) + std::abs(a(q, q)))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        // Phase step: make a(p,q) real and positive.
        const cplx ph = b / bmag;  // e^{i phi}
        const cplx phc = std::conj(ph);
        for (std::size_t r = 0; r < n; ++r) a(r, q) *= phc;
        for (std::size_t c = 0; c < n; ++c) a(q, c) *= ph;
        if (want_vectors)
          for (std::size_t r = 0; r < n; ++r) v(r, q) *= phc;

        // Real rotation zeroing the (p,q) entry.
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * bmag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const cplx arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (std::size_t col = 0; col < n; ++col) {
          const cplx apc = a(p, col), aqc = a(q, col);
          a(p, col) = c * apc - s * aqc;
          a(q, col) = s * apc + c * aqc;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = app - t * bmag;
        a(q, q) = aqq + t * bmag;
        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const cplx vrp = v(r, p), vrq = v(r, q);
            v(r, p) = c * vrp - s * vrq;
            v(r, q) = s * vrp + c * vrq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  Spectrum out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]).real();
  if (want_vectors) {
    out.vectors = CMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> singular_values(const CMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<CVector> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = a.column(c);

  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          alpha += std::norm(cols[p][r]);
          beta += std::norm(cols[q][r]);
        }
        const cplx gamma = inner(cols[p], cols[q]);
        const double g = std::abs(gamma);
        if (g <= 1e-15 * std::sqrt(alpha * beta) || g == 0.0) continue;
        rotated = true;
        const cplx ph = gamma / g;
        for (auto& x : cols[q]) x *= std::conj(ph);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const cplx xp = cols[p][r], xq = cols[q][r];
          cols[p][r] = c * xp - s * xq;
          cols[q][r] = s * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t c = 0; c < n; ++c) sv[c] = norm(cols[c]);
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::size_t matrix_rank(const CMatrix& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const auto sv = singular_values(a);
  if (sv.front() == 0.0) return 0;
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rel_tol * sv.front(); }));
}

CVector OrthonormalSet::residual(std::span<const cplx> v) const {
  CVector r(v.begin(), v.end());
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis_) {
      const cplx c = inner(q, r);
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * q[k];
    }
  }
  return r;
}

bool OrthonormalSet::try_add(std::span<const cplx> v, double rel_tol) {
  if (v.size() != dim_) throw Error("OrthonormalSet: dimension mismatch");
  const double vn = norm(v);
  if (vn == 0.0) return false;
  CVector r = residual(v);
  const double rn = norm(r);
  if (rn <= rel_tol * vn) return false;
  for (auto& x : r) x /= rn;
  basis_.push_back(std::move(r));
  return true;
}

CVector OrthonormalSet::project(std::span<const cplx> v) const {
  CVector p(v.size());
  for (const auto& q : basis_) {
    const cplx c = inner(q, v);
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += c * q[k];
  }
  return p;
}

CVector least_squares(const CMatrix& a, std::span<const cplx> b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw Error("least_squares: shape mismatch");
  // Modified Gram-Schmidt QR with reorthogonalization.
  std::vector<CVector> q(n);
  CMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    CVector v = a.column(j);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t i = 0; i < j; ++i) {
        const cplx c = inner(q[i], v);
        r(i, j) += c;
        for (std::size_t k = 0; k < m; ++k) v[k] -= c * q[i][k];
      }
    const double vn = norm(v);
    if (vn <= 1e-13 * std::max(1.0, a.max_abs())) throw Error("least_squares: rank-deficient matrix");
    r(j, j) = vn;
    for (auto& x : v) x /= vn;
    q[j] = std::move(v);
  }
  CVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = inner(q[i], b);
  CVector x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    cplx s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= r(ii, j) * x[j];
    x[ii] = s / r(ii, ii);
  }
  return x;
}

bool cholesky_solve(std::vector<double>& s, std::vector<double>& r, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = s[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= s[j * n + k] * s[j * n + k];
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    s[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= s[i * n + k] * s[j * n + k];
      s[i * n + j] = v / d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = r[i];
    for (std::size_t k = 0; k < i; ++k) v -= s[i * n + k] * r[k];
    r[i] = v / s[i * n + i];
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double v = r[ii];
    for (std::size_t k = ii + 1; k < n; ++k) v -= s[k * n + ii] * r[k];
    r[ii] = v / s[ii * n + ii];
  }
  return true;
}

}  // namespace vbent
