#pragma once

#include "qlag/complex.hpp"
#include "qlag/precision.hpp"

#include <optional>
#include <vector>

namespace qlag {

/// Parameters of the bilateral series
///   sum_nu (a_1,...,a_r)_nu / (b_1,...,b_r)_nu x^nu,
/// convergent for |b_1...b_r / a_1...a_r| < |x| < 1.
struct BilateralSeriesSpec {
  std::vector<Complex> numerators;
  std::vector<Complex> denominators;
  Complex argument;
};

/// Truncation controls for bilateral_psi. The default is adaptive.
struct SeriesLimits {
  /// Sum only |nu| <= max_abs_index (no convergence test).
  std::optional<long> max_abs_index;
  /// Keep summing this many terms per tail after the stop rule fires.
  long extra_terms = 0;
  /// Hard cap on terms per tail.
  long max_terms_per_tail = 1'000'000;
};

struct SeriesEvaluation {
  Complex value;
  long lowest_index = 0;
  long highest_index = 0;
};

/// Adaptive evaluation of the bilateral series. Each tail stops after three
/// consecutive terms below eps_product times the running partial sum.
/// Throws DivergentSeries outside the convergence annulus and PoleError when a
/// denominator factor vanishes.
SeriesEvaluation evaluate_bilateral(const BilateralSeriesSpec& spec, const PrecisionContext& ctx,
                                    const SeriesLimits& limits = {});

inline Complex bilateral_psi(const BilateralSeriesSpec& spec, const PrecisionContext& ctx) {
  return evaluate_bilateral(spec, ctx).value;
}

/// Very-well-poised series with numerators (q sqrt_a, -q sqrt_a, b_1, ...) and
/// denominators (sqrt_a, -sqrt_a, aq/b_1, ...); a = sqrt_a^2.
BilateralSeriesSpec very_well_poised(const Complex& sqrt_a, const std::vector<Complex>& b, const Complex& x,
                                     const PrecisionContext& ctx);

/// Left side of Bailey's 6psi6 sum, argument a^2 q / (bcde).
Complex bailey_lhs(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
                   const PrecisionContext& ctx);
/// Product side of Bailey's 6psi6 sum. Throws ZeroArgument, DomainError when
/// |a^2 q / (bcde)| >= 1, PoleError.
Complex bailey_rhs(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
                   const PrecisionContext& ctx);
/// |lhs - rhs| / (|lhs| + |rhs|)
double bailey_residual(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
                       const PrecisionContext& ctx);

/// Slater's transformation of a very-well-poised balanced 2r psi 2r series.
/// `aux` holds the free parameters a_3..a_r, `b` holds b_3..b_{2r}.
struct SlaterSides {
  Complex lhs;
  Complex rhs;
  std::vector<Complex> rhs_terms;
};
SlaterSides slater_sides(int r, const Complex& a, const std::vector<Complex>& aux, const std::vector<Complex>& b,
                         const PrecisionContext& ctx);
double slater_residual(int r, const Complex& a, const std::vector<Complex>& aux, const std::vector<Complex>& b,
                       const PrecisionContext& ctx);

/// Product of (u)_inf over a list; PoleError if `denominator` and a factor vanishes.
Complex qpoch_inf_product(const std::vector<Complex>& args, const PrecisionContext& ctx, bool denominator = false);

}  // namespace qlag
