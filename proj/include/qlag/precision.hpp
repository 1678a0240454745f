#pragma once

#include "qlag/complex.hpp"

namespace qlag {

/// Working precision, base q and tolerances shared by every evaluation.
///
/// Immutable after construction and safe to share between threads.
class PrecisionContext {
 public:
  static constexpr long kDefaultBits = 256;

  /// Throws DomainError unless 0 < |q| < 1. The square root of q is the
  /// principal branch unless one is supplied explicitly.
  PrecisionContext(long bits, const Complex& q);
  PrecisionContext(long bits, const Complex& q, const Complex& sqrt_q);
  /// Convenience for real q given as a decimal string, e.g. "0.3".
  static PrecisionContext with_real_q(long bits, std::string_view q);

  long bits() const { return bits_; }
  mpfr_prec_t prec() const { return static_cast<mpfr_prec_t>(bits_); }
  const Complex& q() const { return q_; }
  const Complex& sqrt_q() const { return sqrt_q_; }
  double abs_q() const { return abs_q_; }

  /// Relative tail target of infinite products and series.
  double eps_product() const { return eps_product_; }
  /// Default pass threshold for identity residuals.
  double eps_identity() const { return eps_identity_; }
  void set_eps_identity(double eps);

  Complex one() const { return Complex(1L, prec()); }
  Complex zero() const { return Complex(prec()); }
  Complex real(double v) const { return Complex(v, 0.0, prec()); }
  /// q^k for any integer k.
  Complex q_pow(long k) const;

  /// Same base and branch at a different precision.
  PrecisionContext with_bits(long bits) const;

 private:
  long bits_;
  Complex q_;
  Complex sqrt_q_;
  double abs_q_;
  double eps_product_;
  double eps_identity_;
};

}  // namespace qlag
