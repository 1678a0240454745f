#pragma once

#include "qlag/complex.hpp"

#include <cstddef>
#include <vector>

namespace qlag {

/// Dense row-major matrix of multiprecision complex entries.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols, mpfr_prec_t precision);
  static ComplexMatrix identity(std::size_t n, mpfr_prec_t precision);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpfr_prec_t precision() const { return precision_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  /// Largest entrywise modulus of a - b.
  friend double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);
  /// Max over rows of the sum of entry moduli (infinity norm).
  double norm_inf() const;
  /// Sum of moduli in row i.
  double row_norm(std::size_t i) const;

  /// Product of the diagonal entries.
  Complex diagonal_product() const;
  bool is_square() const { return rows_ == cols_; }

 private:
  std::size_t rows_, cols_;
  mpfr_prec_t precision_;
  std::vector<Complex> data_;
};

/// LU factorization with partial pivoting, P A = L U.
class LuDecomposition {
 public:
  explicit LuDecomposition(const ComplexMatrix& a);

  Complex determinant() const;
  ComplexMatrix inverse() const;
  std::vector<Complex> solve(const std::vector<Complex>& rhs) const;
  /// ||A||_inf * ||A^-1||_inf; infinity when A is singular.
  double condition_estimate() const;
  bool singular() const { return singular_; }

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  int parity_ = 1;
  bool singular_ = false;
  double norm_a_ = 0.0;
};

Complex determinant(const ComplexMatrix& a);

/// Inverse of an upper-triangular matrix by back substitution; throws
/// PoleError on a zero diagonal entry.
ComplexMatrix upper_triangular_inverse(const ComplexMatrix& a);

}  // namespace qlag
