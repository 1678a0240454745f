#include "qlag/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qlag {

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(&v_, precision);
  mpfr_set_zero(&v_, 1);
}

Real::Real(double value, mpfr_prec_t precision) {
  mpfr_init2(&v_, precision);
  mpfr_set_d(&v_, value, MPFR_RNDN);
}

Real::Real(long value, mpfr_prec_t precision) {
  mpfr_init2(&v_, precision);
  mpfr_set_si(&v_, value, MPFR_RNDN);
}

Real Real::parse(std::string_view text, mpfr_prec_t precision) {
  Real out(precision);
  std::string buf(text);
  char* end = nullptr;
  mpfr_strtofr(out.raw(), buf.c_str(), &end, 10, MPFR_RNDN);
  if (buf.empty() || end == buf.c_str() || *end != '\0') {
    throw std::invalid_argument("not a real number: '" + buf + "'");
  }
  return out;
}

Real::Real(const Real& other) {
  mpfr_init2(&v_, other.precision());
  mpfr_set(&v_, &other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  std::memcpy(&v_, &other.v_, sizeof(v_));
  // Leave the source holding a fresh minimal-precision zero.
  mpfr_init2(&other.v_, MPFR_PREC_MIN);
  mpfr_set_zero(&other.v_, 1);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    if (precision() != other.precision()) mpfr_set_prec(&v_, other.precision());
    mpfr_set(&v_, &other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(&v_, &other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(&v_); }

void Real::round_to(mpfr_prec_t precision) { mpfr_prec_round(&v_, precision, MPFR_RNDN); }

void Real::grow_to(mpfr_prec_t precision) {
  if (precision > this->precision()) mpfr_prec_round(&v_, precision, MPFR_RNDN);
}

double Real::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  if (!is_finite()) return std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, &v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(&v_)) return "nan";
  if (mpfr_inf_p(&v_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  std::size_t nd = digits > 0 ? static_cast<std::size_t>(digits) : mpfr_get_str_ndigits(10, precision());
  mpfr_exp_t exp10 = 0;
  char* s = mpfr_get_str(nullptr, &exp10, 10, nd, &v_, MPFR_RNDN);
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant.erase(0, 1);
  // strip trailing zeros of the mantissa
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out = neg ? "-" : "";
  out += mant[0];
  if (mant.size() > 1) {
    out += '.';
    out.append(mant, 1, std::string::npos);
  }
  long e = static_cast<long>(exp10) - 1;
  if (e != 0) out += "e" + std::to_string(e);
  return out;
}

Real& Real::operator+=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_add(&v_, &v_, rhs.raw(), MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_sub(&v_, &v_, rhs.raw(), MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_mul(&v_, &v_, rhs.raw(), MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  grow_to(rhs.precision());
  mpfr_div(&v_, &v_, rhs.raw(), MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(&v_, &v_, rhs, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.raw(), raw(), MPFR_RNDN);
  return out;
}

namespace {
mpfr_prec_t joint(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real out(joint(a, b));
  mpfr_add(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return out;
}

Real operator-(const Real& a, const Real& b) {
  Real out(joint(a, b));
  mpfr_sub(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, const Real& b) {
  Real out(joint(a, b));
  mpfr_mul(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return out;
}

Real operator/(const Real& a, const Real& b) {
  Real out(joint(a, b));
  mpfr_div(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, long b) {
  Real out(a.precision());
  mpfr_mul_si(out.raw(), a.raw(), b, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.raw(), b.raw())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.raw(), b.raw());
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define QLAG_UNARY(name, fn)                 \
  Real name(const Real& x) {                 \
    Real out(x.precision());                 \
    fn(out.raw(), x.raw(), MPFR_RNDN);       \
    return out;                              \
  }

QLAG_UNARY(abs, mpfr_abs)
QLAG_UNARY(sqrt, mpfr_sqrt)
QLAG_UNARY(log, mpfr_log)
QLAG_UNARY(exp, mpfr_exp)
QLAG_UNARY(cos, mpfr_cos)
QLAG_UNARY(sin, mpfr_sin)

#undef QLAG_UNARY

Real pow(const Real& base, const Real& exponent) {
  Real out(joint(base, exponent));
  mpfr_pow(out.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return out;
}

Real hypot(const Real& a, const Real& b) {
  Real out(joint(a, b));
  mpfr_hypot(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return out;
}

Real atan2(const Real& y, const Real& x) {
  Real out(joint(y, x));
  mpfr_atan2(out.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return out;
}

Real ldexp(const Real& x, long e) {
  Real out(x.precision());
  mpfr_mul_2si(out.raw(), x.raw(), e, MPFR_RNDN);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  auto p = os.precision();
  return os << x.to_string(p > 0 ? static_cast<int>(p) : 0);
}

}  // namespace qlag
