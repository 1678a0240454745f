#include "qlag/matrix.hpp"

#include "qlag/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qlag {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, mpfr_prec_t precision)
    : rows_(rows), cols_(cols), precision_(precision), data_(rows * cols, Complex(precision)) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n, mpfr_prec_t precision) {
  ComplexMatrix m(n, n, precision);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1L, precision);
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix out(a.rows_, b.cols_, std::max(a.precision_, b.precision_));
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      Complex acc(out.precision_);
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data_.size(); ++k) worst = std::max(worst, (a.data_[k] - b.data_[k]).abs_approx());
  return worst;
}

double ComplexMatrix::row_norm(std::size_t i) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j).abs_approx();
  return acc;
}

double ComplexMatrix::norm_inf() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) worst = std::max(worst, row_norm(i));
  return worst;
}

Complex ComplexMatrix::diagonal_product() const {
  Complex p(1L, precision_);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) p *= (*this)(i, i);
  return p;
}

LuDecomposition::LuDecomposition(const ComplexMatrix& a) : lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw std::invalid_argument("LU of a non-square matrix");
  const std::size_t n = a.rows();
  norm_a_ = a.norm_inf();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = k; i < n; ++i) {
      double m = lu_(i, k).log2_abs();
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (lu_(piv, k).is_zero()) {
      singular_ = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      parity_ = -parity_;
    }
    const Complex pivot_inv = qlag::inverse(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (lu_(i, k).is_zero()) continue;
      Complex factor = lu_(i, k) * pivot_inv;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
      lu_(i, k) = std::move(factor);
    }
  }
}

Complex LuDecomposition::determinant() const {
  Complex d = lu_.diagonal_product();
  if (parity_ < 0) d = -d;
  return d;
}

std::vector<Complex> LuDecomposition::solve(const std::vector<Complex>& rhs) const {
  if (singular_) throw PoleError("solve with a singular matrix");
  const std::size_t n = lu_.rows();
  std::vector<Complex> y(n, Complex(lu_.precision()));
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = rhs[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) acc -= lu_(i, j) * y[j];
    y[i] = std::move(acc);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    Complex acc = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= lu_(ii, j) * y[j];
    y[ii] = acc / lu_(ii, ii);
  }
  return y;
}

ComplexMatrix LuDecomposition::inverse() const {
  const std::size_t n = lu_.rows();
  ComplexMatrix inv(n, n, lu_.precision());
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Complex> e(n, Complex(lu_.precision()));
    e[c] = Complex(1L, lu_.precision());
    auto col = solve(e);
    for (std::size_t r = 0; r < n; ++r) inv(r, c) = std::move(col[r]);
  }
  return inv;
}

double LuDecomposition::condition_estimate() const {
  if (singular_) return std::numeric_limits<double>::infinity();
  return norm_a_ * inverse().norm_inf();
}

Complex determinant(const ComplexMatrix& a) { return LuDecomposition(a).determinant(); }

ComplexMatrix upper_triangular_inverse(const ComplexMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  ComplexMatrix g(n, n, a.precision());
  for (std::size_t j = 0; j < n; ++j) {
    if (a(j, j).is_zero()) throw PoleError("zero diagonal entry in triangular matrix");
  }
  for (std::size_t j = n; j-- > 0;) {
    g(j, j) = inverse(a(j, j));
    for (std::size_t i = j; i-- > 0;) {
      Complex acc(a.precision());
      for (std::size_t k = i + 1; k <= j; ++k) acc += a(i, k) * g(k, j);
      g(i, j) = -acc / a(i, i);
    }
  }
  return g;
}

}  // namespace qlag
