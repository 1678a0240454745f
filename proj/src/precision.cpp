#include "qlag/precision.hpp"

#include "qlag/errors.hpp"

#include <algorithm>
#include <cmath>

namespace qlag {

PrecisionContext::PrecisionContext(long bits, const Complex& q)
    : PrecisionContext(bits, q, sqrt([&] {
        Complex r = q;
        r.round_to(static_cast<mpfr_prec_t>(bits));
        return r;
      }())) {}

PrecisionContext::PrecisionContext(long bits, const Complex& q, const Complex& sqrt_q)
    : bits_(bits), q_(q), sqrt_q_(sqrt_q) {
  if (bits < 32) throw DomainError("precision must be at least 32 bits");
  q_.round_to(prec());
  sqrt_q_.round_to(prec());
  if (q_.is_zero()) throw DomainError("base q must be nonzero");
  abs_q_ = abs(q_).to_double();
  if (!(abs_q_ < 1.0)) throw DomainError("base q must satisfy |q| < 1");
  if (relative_difference(sqrt_q_ * sqrt_q_, q_) > std::ldexp(1.0, -static_cast<int>(bits) + 4)) {
    throw DomainError("sqrt_q does not square to q");
  }
  eps_product_ = std::ldexp(1.0, -static_cast<int>(bits));
  eps_identity_ = std::ldexp(1.0, -static_cast<int>(bits / 3));
}

PrecisionContext PrecisionContext::with_real_q(long bits, std::string_view q) {
  return PrecisionContext(bits, Complex::parse(q, static_cast<mpfr_prec_t>(bits)));
}

void PrecisionContext::set_eps_identity(double eps) {
  if (!(eps > eps_product_)) throw DomainError("eps_identity must exceed eps_product");
  eps_identity_ = eps;
}

Complex PrecisionContext::q_pow(long k) const { return pow(q_, k); }

PrecisionContext PrecisionContext::with_bits(long bits) const {
  Complex q = q_;
  q.round_to(static_cast<mpfr_prec_t>(bits));
  Complex root = sqrt(q);
  // keep the branch of the current square root
  if ((root - sqrt_q_).abs_approx() > (root + sqrt_q_).abs_approx()) root = -root;
  PrecisionContext out(bits, q, root);
  out.eps_identity_ = std::max(eps_identity_, out.eps_product_ * 2);
  return out;
}

}  // namespace qlag
