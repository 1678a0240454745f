#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qlag {

/// Owning value type around an MPFR number.
///
/// Every binary operation produces a result at the larger of the two operand
/// precisions, so a computation that starts from context-precision inputs
/// stays at that precision. Assignment copies the precision of the source.
class Real {
 public:
  Real() : Real(static_cast<mpfr_prec_t>(53)) {}
  explicit Real(mpfr_prec_t precision);
  Real(double value, mpfr_prec_t precision);
  Real(long value, mpfr_prec_t precision);
  Real(int value, mpfr_prec_t precision) : Real(static_cast<long>(value), precision) {}

  /// Parses a decimal or hexadecimal-float literal; throws std::invalid_argument.
  static Real parse(std::string_view text, mpfr_prec_t precision);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(&v_); }
  /// Changes precision in place, rounding the current value.
  void round_to(mpfr_prec_t precision);

  mpfr_ptr raw() { return &v_; }
  mpfr_srcptr raw() const { return &v_; }

  double to_double() const { return mpfr_get_d(&v_, MPFR_RNDN); }
  /// log2 of the magnitude, -inf for zero. Safe outside double range.
  double log2_abs() const;
  bool is_zero() const { return mpfr_zero_p(&v_) != 0; }
  bool is_finite() const { return mpfr_number_p(&v_) != 0; }
  int sign() const { return mpfr_sgn(&v_); }

  /// Shortest round-trip decimal form with `digits` significant digits
  /// (0 = enough digits to reproduce the value at its precision).
  std::string to_string(int digits = 0) const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator*=(long rhs);
  Real operator-() const;

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  void grow_to(mpfr_prec_t precision);

  __mpfr_struct v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real hypot(const Real& a, const Real& b);
Real atan2(const Real& y, const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace qlag
