#include "qlag/qseries.hpp"

#include "qlag/errors.hpp"
#include "qlag/qnum.hpp"
#include "qlag/summation.hpp"

#include <cmath>
#include <string>

namespace qlag {

namespace {

double log2_product_abs(const std::vector<Complex>& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += z.log2_abs();
  return acc;
}

// Sums one tail. `powers_num` / `powers_den` hold the factors that enter the
// next step; both are multiplied by `step` after every term.
struct TailState {
  std::vector<Complex> up;    // multiplied into the ratio numerator as (1 - up_i)
  std::vector<Complex> down;  // divided out as (1 - down_i)
};

}  // namespace

SeriesEvaluation evaluate_bilateral(const BilateralSeriesSpec& spec, const PrecisionContext& ctx,
                                    const SeriesLimits& limits) {
  const auto r = spec.numerators.size();
  if (r == 0 || spec.denominators.size() != r) {
    throw DomainError("bilateral series needs r >= 1 numerators and as many denominators");
  }
  if (spec.argument.is_zero()) throw DivergentSeries("bilateral series with x = 0 diverges for nu < 0");
  const double log2_x = spec.argument.log2_abs();
  const double log2_low = log2_product_abs(spec.denominators) - log2_product_abs(spec.numerators);
  const bool forced = limits.max_abs_index.has_value();
  if (!forced && !(log2_low < log2_x && log2_x < 0.0)) {
    throw DivergentSeries("bilateral series outside |b1..br/a1..ar| < |x| < 1");
  }

  const double log2_eps = std::log2(ctx.eps_product());
  const double log2_pole = log2_eps + 8.0;
  const Complex x = at_precision(spec.argument, ctx);
  const Complex x_inv = inverse(x);
  const Complex q_inv = inverse(ctx.q());

  SeriesEvaluation out;
  auto run_tail = [&](bool positive) {
    CompensatedSum tail(ctx.prec());
    // positive: t_{nu+1} = t_nu x prod (1 - a q^nu)/(1 - b q^nu), starting at nu = 0
    // negative: t_{nu-1} = t_nu / x prod (1 - b q^{nu-1})/(1 - a q^{nu-1})
    std::vector<Complex> up, down;
    for (std::size_t i = 0; i < r; ++i) {
      Complex a = at_precision(spec.numerators[i], ctx);
      Complex b = at_precision(spec.denominators[i], ctx);
      if (positive) {
        up.push_back(std::move(a));
        down.push_back(std::move(b));
      } else {
        up.push_back(b * q_inv);
        down.push_back(a * q_inv);
      }
    }
    const Complex& step = positive ? ctx.q() : q_inv;
    const Complex& xfac = positive ? x : x_inv;
    Complex term = ctx.one();
    int quiet = 0;
    long index = 0;
    long extra_left = limits.extra_terms;
    double log2_partial = 0.0;
    for (long k = 1;; ++k) {
      if (forced && k > *limits.max_abs_index) break;
      if (k > limits.max_terms_per_tail) throw DivergentSeries("bilateral series: term cap reached");
      Complex ratio = xfac;
      for (std::size_t i = 0; i < r; ++i) {
        Complex den = one_minus(down[i]);
        if (den.log2_abs() < log2_pole) {
          throw PoleError("bilateral series hits a pole at nu = " + std::to_string(positive ? k - 1 : -k));
        }
        ratio *= one_minus(up[i]);
        ratio /= den;
        up[i] *= step;
        down[i] *= step;
      }
      term *= ratio;
      tail.add(term);
      index = positive ? k : -k;
      if (forced) continue;
      // running magnitude of 1 + this tail
      if (k % 8 == 1) log2_partial = (tail.value() + ctx.one()).log2_abs();
      if (term.log2_abs() < log2_eps + log2_partial) {
        ++quiet;
      } else {
        quiet = 0;
      }
      if (quiet >= 3) {
        if (extra_left-- <= 0) break;
      }
    }
    (positive ? out.highest_index : out.lowest_index) = index;
    return tail.value();
  };

  Complex negative = run_tail(false);
  Complex positive = run_tail(true);
  CompensatedSum total(ctx.prec());
  total.add(negative);
  total.add(ctx.one());
  total.add(positive);
  out.value = total.value();
  return out;
}

BilateralSeriesSpec very_well_poised(const Complex& sqrt_a, const std::vector<Complex>& b, const Complex& x,
                                     const PrecisionContext& ctx) {
  BilateralSeriesSpec spec;
  Complex root = at_precision(sqrt_a, ctx);
  Complex a = root * root;
  Complex q_root = ctx.q() * root;
  spec.numerators.push_back(q_root);
  spec.numerators.push_back(-q_root);
  spec.denominators.push_back(root);
  spec.denominators.push_back(-root);
  Complex aq = a * ctx.q();
  for (const auto& bi : b) {
    if (bi.is_zero()) throw ZeroArgument("very-well-poised parameter is zero");
    spec.numerators.push_back(at_precision(bi, ctx));
    spec.denominators.push_back(aq / bi);
  }
  spec.argument = at_precision(x, ctx);
  return spec;
}

Complex qpoch_inf_product(const std::vector<Complex>& args, const PrecisionContext& ctx, bool denominator) {
  Complex p = ctx.one();
  const double log2_pole = std::log2(ctx.eps_product()) + 8.0;
  for (const auto& u : args) {
    Complex f = qpoch_inf(u, ctx);
    if (denominator && f.log2_abs() < log2_pole) throw PoleError("vanishing infinite product in a denominator");
    p *= f;
  }
  return p;
}

namespace {

void require_nonzero(std::initializer_list<const Complex*> values) {
  for (const Complex* v : values) {
    if (v->is_zero()) throw ZeroArgument("parameter must be nonzero");
  }
}

Complex bailey_argument(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
                        const PrecisionContext& ctx) {
  require_nonzero({&a, &b, &c, &d, &e});
  Complex aa = at_precision(a, ctx);
  return aa * aa * ctx.q() / (b * c * d * e);
}

}  // namespace

Complex bailey_lhs(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
                   const PrecisionContext& ctx) {
  Complex x = bailey_argument(a, b, c, d, e, ctx);
  return bilateral_psi(very_well_poised(sqrt(at_precision(a, ctx)), {b, c, d, e}, x, ctx), ctx);
}

Complex bailey_rhs(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
                   const PrecisionContext& ctx) {
  Complex x = bailey_argument(a, b, c, d, e, ctx);
  if (!(x.log2_abs() < 0.0)) throw DomainError("Bailey's sum needs |a^2 q/(bcde)| < 1");
  const Complex& q = ctx.q();
  Complex aq = at_precision(a, ctx) * q;
  std::vector<Complex> num = {aq, aq / (b * c), aq / (b * d), aq / (b * e), aq / (c * d), aq / (c * e), aq / (d * e),
                              q, q / a};
  std::vector<Complex> den = {aq / b, aq / c, aq / d, aq / e, q / b, q / c, q / d, q / e, x};
  return qpoch_inf_product(num, ctx) / qpoch_inf_product(den, ctx, true);
}

double bailey_residual(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const Complex& e,
                       const PrecisionContext& ctx) {
  Complex rhs = bailey_rhs(a, b, c, d, e, ctx);
  Complex lhs = bailey_lhs(a, b, c, d, e, ctx);
  return relative_difference(lhs, rhs);
}

SlaterSides slater_sides(int r, const Complex& a, const std::vector<Complex>& aux, const std::vector<Complex>& b,
                         const PrecisionContext& ctx) {
  if (r < 3) throw DomainError("Slater's transformation needs r >= 3");
  if (aux.size() != static_cast<std::size_t>(r - 2) || b.size() != static_cast<std::size_t>(2 * r - 2)) {
    throw DomainError("Slater's transformation needs r-2 auxiliary and 2r-2 series parameters");
  }
  if (a.is_zero()) throw ZeroArgument("a must be nonzero");
  for (const auto& v : aux) {
    if (v.is_zero()) throw ZeroArgument("auxiliary parameter is zero");
  }
  const Complex& q = ctx.q();
  Complex aa = at_precision(a, ctx);
  Complex b_prod = ctx.one();
  for (const auto& bi : b) {
    if (bi.is_zero()) throw ZeroArgument("series parameter is zero");
    b_prod *= bi;
  }
  Complex x = pow(aa, r - 1) * ctx.q_pow(r - 2) / b_prod;
  if (!(x.log2_abs() < 0.0)) throw DomainError("Slater's transformation needs |a^{r-1} q^{r-2} / b_3...b_2r| < 1");

  const Complex root = sqrt(aa);
  const Complex aq = aa * q;
  SlaterSides out;
  out.lhs = bilateral_psi(very_well_poised(root, b, x, ctx), ctx);

  CompensatedSum rhs(ctx.prec());
  for (std::size_t k = 0; k < aux.size(); ++k) {
    const Complex ak = at_precision(aux[k], ctx);
    std::vector<Complex> num, den;
    for (std::size_t j = 0; j < aux.size(); ++j) {
      if (j == k) continue;
      const Complex& aj = aux[j];
      num.push_back(aj);
      num.push_back(q / aj);
      num.push_back(aj / aa);
      num.push_back(aq / aj);
      den.push_back(aj / ak);
      den.push_back(ak * q / aj);
      den.push_back(ak * aj / aa);
      den.push_back(aq / (ak * aj));
    }
    for (const auto& bi : b) {
      num.push_back(ak * q / bi);
      num.push_back(aq / (ak * bi));
      den.push_back(q / bi);
      den.push_back(aq / bi);
    }
    num.push_back(aq);
    num.push_back(q / aa);
    den.push_back(ak * ak * q / aa);
    den.push_back(aq / (ak * ak));
    Complex prefactor = qpoch_inf_product(num, ctx) / qpoch_inf_product(den, ctx, true);

    std::vector<Complex> shifted;
    for (const auto& bi : b) shifted.push_back(ak * bi / aa);
    Complex series = bilateral_psi(very_well_poised(ak / root, shifted, x, ctx), ctx);
    out.rhs_terms.push_back(prefactor * series);
    rhs.add(out.rhs_terms.back());
  }
  out.rhs = rhs.value();
  return out;
}

double slater_residual(int r, const Complex& a, const std::vector<Complex>& aux, const std::vector<Complex>& b,
                       const PrecisionContext& ctx) {
  SlaterSides sides = slater_sides(r, a, aux, b, ctx);
  return relative_difference(sides.lhs, sides.rhs);
}

}  // namespace qlag
