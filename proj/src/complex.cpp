#include "qlag/complex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qlag {

Complex::Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.precision() < im_.precision()) re_.round_to(im_.precision());
  if (im_.precision() < re_.precision()) im_.round_to(re_.precision());
}

Complex Complex::parse(std::string_view text, mpfr_prec_t precision) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' ' || c == '(' || c == ')'; }), s.end());
  auto comma = s.find(',');
  if (comma == std::string::npos) return Complex(Real::parse(s, precision), Real(precision));
  return Complex(Real::parse(s.substr(0, comma), precision), Real::parse(s.substr(comma + 1), precision));
}

Complex Complex::polar(const Real& modulus, const Real& angle) {
  return Complex(modulus * cos(angle), modulus * sin(angle));
}

void Complex::round_to(mpfr_prec_t precision) {
  re_.round_to(precision);
  im_.round_to(precision);
}

double Complex::abs_approx() const { return std::hypot(re_.to_double(), im_.to_double()); }

double Complex::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  double lr = re_.log2_abs();
  double li = im_.log2_abs();
  double hi = std::max(lr, li);
  double lo = std::min(lr, li);
  return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
}

std::string Complex::to_string(int digits) const {
  return "(" + re_.to_string(digits) + ", " + im_.to_string(digits) + ")";
}

Complex& Complex::operator+=(const Complex& rhs) {
  re_ += rhs.re_;
  im_ += rhs.im_;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re_ -= rhs.re_;
  im_ -= rhs.im_;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  *this = *this * rhs;
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  *this = *this / rhs;
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

Complex& Complex::operator*=(long rhs) {
  re_ *= rhs;
  im_ *= rhs;
  return *this;
}

Complex operator*(const Complex& a, const Complex& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  Complex out(p);
  // fmms/fmma round once, so the product is correctly rounded per component.
  mpfr_fmms(out.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_fmma(out.im_.raw(), a.re_.raw(), b.im_.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
  return out;
}

Complex operator/(const Complex& a, const Complex& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  Real den(p + 16);
  mpfr_fmma(den.raw(), b.re_.raw(), b.re_.raw(), b.im_.raw(), b.im_.raw(), MPFR_RNDN);
  Complex out(p + 16);
  mpfr_fmma(out.re_.raw(), a.re_.raw(), b.re_.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
  mpfr_fmms(out.im_.raw(), a.im_.raw(), b.re_.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
  out.re_ /= den;
  out.im_ /= den;
  out.round_to(p);
  return out;
}

Complex conj(const Complex& z) { return Complex(z.real(), -z.imag()); }

Real norm(const Complex& z) {
  Real out(z.precision());
  mpfr_fmma(out.raw(), z.real().raw(), z.real().raw(), z.imag().raw(), z.imag().raw(), MPFR_RNDN);
  return out;
}

Real abs(const Complex& z) { return hypot(z.real(), z.imag()); }

Real arg(const Complex& z) { return atan2(z.imag(), z.real()); }

Complex inverse(const Complex& z) {
  Real d = norm(z);
  return Complex(z.real() / d, -z.imag() / d);
}

Complex pow(const Complex& z, long e) {
  Complex result(1L, z.precision());
  if (e == 0) return result;
  Complex base = e < 0 ? inverse(z) : z;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1UL : static_cast<unsigned long>(e);
  while (k != 0) {
    if (k & 1UL) result *= base;
    k >>= 1;
    if (k != 0) base *= base;
  }
  return result;
}

Complex sqrt(const Complex& z) {
  mpfr_prec_t p = z.precision();
  if (z.is_zero()) return Complex(p);
  Real r = abs(z);
  Real half(0.5, p);
  Real re = sqrt((r + z.real()) * half);
  Real im = sqrt((r - z.real()) * half);
  if (z.imag().sign() < 0) im = -im;
  // The component that suffers cancellation is recovered from im(z) = 2 re im.
  if (z.real().sign() >= 0) {
    if (!re.is_zero()) im = z.imag() / (re * 2L);
  } else if (!im.is_zero()) {
    re = z.imag() / (im * 2L);
  }
  return Complex(std::move(re), std::move(im));
}

Complex one_minus(const Complex& z) {
  Complex out(z.precision());
  mpfr_si_sub(out.real().raw(), 1, z.real().raw(), MPFR_RNDN);
  mpfr_neg(out.imag().raw(), z.imag().raw(), MPFR_RNDN);
  return out;
}

double relative_difference(const Complex& a, const Complex& b) {
  Real scale = abs(a) + abs(b);
  Real diff = abs(a - b);
  if (scale.is_zero()) return 0.0;
  return (diff / scale).to_double();
}

std::ostream& operator<<(std::ostream& os, const Complex& z) {
  auto p = os.precision();
  return os << z.to_string(p > 0 ? static_cast<int>(p) : 0);
}

}  // namespace qlag
