#pragma once

#include "qlag/real.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace qlag {

/// Complex number with MPFR real and imaginary parts.
class Complex {
 public:
  Complex() = default;
  explicit Complex(mpfr_prec_t precision) : re_(precision), im_(precision) {}
  Complex(Real re, Real im);
  Complex(double re, double im, mpfr_prec_t precision) : re_(re, precision), im_(im, precision) {}
  Complex(long re, mpfr_prec_t precision) : re_(re, precision), im_(0L, precision) {}

  /// Accepts "re", "re,im" or "re+imi"-free pair syntax "(re,im)".
  static Complex parse(std::string_view text, mpfr_prec_t precision);
  /// Unit-modulus value exp(i*angle) scaled by `modulus`.
  static Complex polar(const Real& modulus, const Real& angle);

  const Real& real() const { return re_; }
  const Real& imag() const { return im_; }
  Real& real() { return re_; }
  Real& imag() { return im_; }

  mpfr_prec_t precision() const { return re_.precision(); }
  void round_to(mpfr_prec_t precision);

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  /// |z| approximated in double; fine for loop control and diagnostics.
  double abs_approx() const;
  /// log2 |z| without overflow; -inf for zero.
  double log2_abs() const;

  std::string to_string(int digits = 0) const;

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator/=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator*=(long rhs);
  Complex operator-() const { return Complex(-re_, -im_); }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(const Complex& a, const Complex& b);
  friend Complex operator/(const Complex& a, const Complex& b);
  friend Complex operator*(Complex a, const Real& b) { return a *= b; }
  friend Complex operator*(const Real& b, Complex a) { return a *= b; }
  friend Complex operator*(Complex a, long b) { return a *= b; }

  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Real re_;
  Real im_;
};

Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex inverse(const Complex& z);
/// Integer power by repeated squaring; negative exponents invert.
Complex pow(const Complex& z, long e);
/// Principal square root (branch cut on the negative real axis).
Complex sqrt(const Complex& z);
/// 1 - z
Complex one_minus(const Complex& z);

/// |a - b| / (|a| + |b|), or 0 when both vanish. Double precision is
/// enough to express residuals down to ~1e-300.
double relative_difference(const Complex& a, const Complex& b);

std::ostream& operator<<(std::ostream& os, const Complex& z);

}  // namespace qlag
