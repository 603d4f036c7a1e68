#pragma once

// Small dense complex linear algebra: just what exact diagonalization of
// sector Hamiltonians (dimension <= 924) and rank tests need.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vbent {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> d);
  /// Matrix whose columns are the given vectors (all of equal length).
  static CMatrix from_columns(std::span<const CVector> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  CVector column(std::size_t c) const;
  CMatrix adjoint() const;
  CMatrix conj() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  /// Largest entry of |A - A^dagger|.
  double hermiticity_defect() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, cplx s);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& x);
CMatrix kron(const CMatrix& a, const CMatrix& b);

cplx inner(std::span<const cplx> a, std::span<const cplx> b);  // <a|b>
double norm(std::span<const cplx> a);

struct Spectrum {
  std::vector<double> values;  ///< ascending
  CMatrix vectors;             ///< column k pairs with values[k]; empty if not requested
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
/// Throws NotHermitian when |A - A^dagger| exceeds 1e-10 * max(1, max|A|).
Spectrum hermitian_eig(const CMatrix& m, bool want_vectors = true);

/// Singular values (descending) by one-sided Jacobi; columns are the data vectors.
std::vector<double> singular_values(const CMatrix& a);

/// Numerical rank with threshold rel_tol * sigma_max.
std::size_t matrix_rank(const CMatrix& a, double rel_tol = 1e-8);

/// Incrementally grown orthonormal basis (modified Gram-Schmidt, two passes).
class OrthonormalSet {
 public:
  explicit OrthonormalSet(std::size_t dim) : dim_(dim) {}

  /// Component of v orthogonal to the current span.
  CVector residual(std::span<const cplx> v) const;
  /// Adds v if its orthogonal part exceeds rel_tol * |v|; returns whether it was added.
  bool try_add(std::span<const cplx> v, double rel_tol = 1e-8);
  /// Orthogonal projection onto the span.
  CVector project(std::span<const cplx> v) const;

  std::size_t size() const { return basis_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<CVector>& vectors() const { return basis_; }

 private:
  std::size_t dim_;
  std::vector<CVector> basis_;
};

/// Least-squares solution of A x ~= b for full-column-rank A (via QR of A).
CVector least_squares(const CMatrix& a, std::span<const cplx> b);

/// Solves the real symmetric positive definite system S x = r in place (Cholesky).
/// Returns false if S is not numerically positive definite.
bool cholesky_solve(std::vector<double>& s, std::vector<double>& r, std::size_t n);

}  // namespace vbent
