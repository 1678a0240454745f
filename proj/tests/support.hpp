#pragma once

#include "qlag/complex.hpp"
#include "qlag/precision.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace qlag::testing {

/// Random complex number with log_{|q|}|z| uniform in [lo, hi] and a uniform phase.
inline Complex random_in_annulus(std::mt19937_64& rng, const PrecisionContext& ctx, double lo, double hi) {
  std::uniform_real_distribution<double> expo(lo, hi);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  double modulus = std::pow(ctx.abs_q(), expo(rng));
  return Complex::polar(Real(modulus, ctx.prec()), Real(phase(rng), ctx.prec()));
}

inline Complex random_real(std::mt19937_64& rng, const PrecisionContext& ctx, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return ctx.real(d(rng));
}

}  // namespace qlag::testing

namespace qlag::testing {

/// x on |q|^{0.5} .. |q|^{-0.5} and t on |q|^{0.1} .. |q|^{0.3}, random phases.
inline std::vector<Complex> random_points(std::mt19937_64& rng, const PrecisionContext& ctx, int count, double lo = -0.5,
                                          double hi = 0.5) {
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) out.push_back(random_in_annulus(rng, ctx, lo, hi));
  return out;
}

inline Complex random_t(std::mt19937_64& rng, const PrecisionContext& ctx) {
  return random_in_annulus(rng, ctx, 0.1, 0.3);
}

}  // namespace qlag::testing
