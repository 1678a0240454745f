#include "qlag/qnum.hpp"

#include "qlag/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qlag {

Complex at_precision(const Complex& z, const PrecisionContext& ctx) {
  Complex out = z;
  if (out.precision() < ctx.prec()) out.round_to(ctx.prec());
  return out;
}

long qpoch_inf_terms(double log2_abs_u, const PrecisionContext& ctx) {
  if (!std::isfinite(log2_abs_u)) return 0;
  const double log2_q = std::log2(ctx.abs_q());
  const double target = std::log2(ctx.eps_product()) + std::log2(1.0 - ctx.abs_q());
  // smallest L with log|u| + L log|q| < target
  double need = (target - log2_abs_u) / log2_q;
  long terms = need < 0.0 ? 0 : static_cast<long>(std::floor(need)) + 1;
  return terms;
}

namespace {

// Running product of factors (1 - u q^l), updated in place on raw MPFR values.
class PochhammerLoop {
 public:
  PochhammerLoop(const Complex& u, const PrecisionContext& ctx)
      : re_(1L, ctx.prec()), im_(0L, ctx.prec()), pr_(u.real()), pi_(u.imag()), a_(ctx.prec()), b_(ctx.prec()),
        scratch_(ctx.prec()), q_(ctx.q()), real_q_(ctx.q().imag().is_zero()) {
    pr_.round_to(std::max(pr_.precision(), ctx.prec()));
    pi_.round_to(pr_.precision());
  }

  void step() {
    // factor a + ib = 1 - power
    mpfr_si_sub(a_.raw(), 1, pr_.raw(), MPFR_RNDN);
    mpfr_neg(b_.raw(), pi_.raw(), MPFR_RNDN);
    mpfr_fmms(scratch_.raw(), re_.raw(), a_.raw(), im_.raw(), b_.raw(), MPFR_RNDN);
    mpfr_fmma(im_.raw(), re_.raw(), b_.raw(), im_.raw(), a_.raw(), MPFR_RNDN);
    mpfr_swap(re_.raw(), scratch_.raw());
    if (real_q_) {
      mpfr_mul(pr_.raw(), pr_.raw(), q_.real().raw(), MPFR_RNDN);
      mpfr_mul(pi_.raw(), pi_.raw(), q_.real().raw(), MPFR_RNDN);
    } else {
      mpfr_fmms(scratch_.raw(), pr_.raw(), q_.real().raw(), pi_.raw(), q_.imag().raw(), MPFR_RNDN);
      mpfr_fmma(pi_.raw(), pr_.raw(), q_.imag().raw(), pi_.raw(), q_.real().raw(), MPFR_RNDN);
      mpfr_swap(pr_.raw(), scratch_.raw());
    }
  }

  Complex value() && { return Complex(std::move(re_), std::move(im_)); }

 private:
  Real re_, im_, pr_, pi_, a_, b_, scratch_;
  const Complex& q_;
  bool real_q_;
};

}  // namespace

Complex qpoch_inf(const Complex& u, const PrecisionContext& ctx) {
  if (u.is_zero()) return ctx.one();
  const long terms = qpoch_inf_terms(u.log2_abs(), ctx);
  PochhammerLoop loop(u, ctx);
  for (long l = 0; l < terms; ++l) loop.step();
  return std::move(loop).value();
}

Complex qpoch(const Complex& u, long nu, const PrecisionContext& ctx) {
  Complex product = ctx.one();
  if (nu == 0) return product;
  if (nu > 0) {
    Complex power = at_precision(u, ctx);
    for (long l = 0; l < nu; ++l) {
      product *= one_minus(power);
      power *= ctx.q();
    }
    return product;
  }
  const Complex q_inv = inverse(ctx.q());
  Complex power = at_precision(u, ctx) * q_inv;
  for (long l = 1; l <= -nu; ++l) {
    Complex factor = one_minus(power);
    if (factor.log2_abs() < std::log2(ctx.eps_product())) {
      throw PoleError("(u)_nu has a vanishing denominator factor 1 - u q^-" + std::to_string(l));
    }
    product /= factor;
    power *= q_inv;
  }
  return product;
}

Complex theta(const Complex& u, const PrecisionContext& ctx) {
  if (u.is_zero()) throw ZeroArgument("theta(0) is undefined");
  // |u| = |q|^m; choose k so that v = u q^-k has |q| <= |v| < 1.
  const double m = u.log2_abs() / std::log2(ctx.abs_q());
  const long k = static_cast<long>(std::ceil(m)) - 1;
  Complex v = k == 0 ? at_precision(u, ctx) : at_precision(u, ctx) * ctx.q_pow(-k);
  Complex value = qpoch_inf(v, ctx) * qpoch_inf(ctx.q() / v, ctx);
  if (k == 0) return value;
  // theta(q^k v) = (-1)^k q^{-k(k-1)/2} v^{-k} theta(v)
  value *= ctx.q_pow(-(k * (k - 1)) / 2) * pow(v, -k);
  if (k % 2 != 0) value = -value;
  return value;
}

Complex e_symbol(const Complex& a, const Complex& b, const PrecisionContext& ctx) {
  if (a.is_zero() || b.is_zero()) throw ZeroArgument("e(a;b) needs nonzero a and b");
  Complex aa = at_precision(a, ctx);
  return theta(aa * b, ctx) * theta(aa / b, ctx) / aa;
}

Complex e_factorial(const Complex& a, const Complex& b, const Complex& t, long r, const PrecisionContext& ctx) {
  if (a.is_zero() || b.is_zero() || t.is_zero()) throw ZeroArgument("e(a;b)_r needs nonzero a, b and t");
  Complex product = ctx.one();
  Complex shifted = at_precision(a, ctx);
  for (long l = 0; l < r; ++l) {
    product *= e_symbol(shifted, b, ctx);
    shifted *= t;
  }
  return product;
}

double theta_normalized(const Complex& u, const PrecisionContext& ctx) {
  if (u.is_zero()) return 0.0;
  Complex m(abs(u), Real(ctx.prec()));
  Complex aq(Real(ctx.abs_q(), ctx.prec()), Real(ctx.prec()));
  Real bound = abs(qpoch_inf(-m, ctx) * qpoch_inf(-(aq / m), ctx));
  double value = (abs(theta(u, ctx)) / bound).to_double();
  return std::isfinite(value) ? value : 0.0;
}

}  // namespace qlag
