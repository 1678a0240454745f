#include "qlag/bcjackson.hpp"

#include "qlag/errors.hpp"
#include "qlag/matrix.hpp"
#include "qlag/qnum.hpp"
#include "qlag/qseries.hpp"
#include "qlag/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace qlag {

namespace {

void require_nonzero(const std::vector<Complex>& z) {
  for (const auto& v : z) {
    if (v.is_zero()) throw ZeroArgument("coordinate is zero");
  }
}

void require_parameters(const ParameterSet& p, std::size_t n) {
  if (p.t.is_zero()) throw ZeroArgument("t is zero");
  if (p.a.size() != static_cast<std::size_t>(2 * p.s + 2)) throw DomainError("expected 2s+2 values a_m");
  for (const auto& am : p.a) {
    if (am.is_zero()) throw ZeroArgument("a_m is zero");
  }
  if (static_cast<int>(n) != p.n) throw DomainError("point has the wrong number of coordinates");
}

Complex small_determinant(const std::vector<Complex>& m, std::size_t n, mpfr_prec_t prec) {
  auto at = [&](std::size_t i, std::size_t j) -> const Complex& { return m[i * n + j]; };
  switch (n) {
    case 1:
      return at(0, 0);
    case 2:
      return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    case 3:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    default: {
      ComplexMatrix a(n, n, prec);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = at(i, j);
      return determinant(a);
    }
  }
}

// Rows i, columns j: w_i^{l_j} - w_i^{-l_j}, where diffs[i][c] holds the value for exponent c.
Complex alternant(const MultiIndex& lambda, const std::vector<std::vector<Complex>>& diffs, mpfr_prec_t prec) {
  const std::size_t n = diffs.size();
  std::vector<Complex> m;
  m.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      auto e = static_cast<std::size_t>(lambda.entries[j] + static_cast<int>(n - j));
      m.push_back(diffs[i][e]);
    }
  }
  return small_determinant(m, n, prec);
}

std::vector<std::vector<Complex>> power_differences(const std::vector<Complex>& w, int top) {
  std::vector<std::vector<Complex>> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    Complex inv = inverse(w[i]);
    Complex up = w[i];
    Complex down = inv;
    auto& row = out[i];
    row.reserve(static_cast<std::size_t>(top) + 1);
    row.emplace_back(w[i].precision());
    for (int c = 1; c <= top; ++c) {
      row.push_back(up - down);
      if (c < top) {
        up *= w[i];
        down *= inv;
      }
    }
  }
  return out;
}

int top_exponent(const MultiIndex& lambda) {
  const int n = static_cast<int>(lambda.entries.size());
  int top = n;
  for (int j = 0; j < n; ++j) top = std::max(top, lambda.entries[static_cast<std::size_t>(j)] + n - j);
  return top;
}

class ConstantIntegrand final : public Integrand {
 public:
  std::size_t count() const override { return 1; }
  void weighted_values(const std::vector<Complex>& w, const PrecisionContext& ctx,
                       std::vector<Complex>& out) const override {
    out.assign(1, weyl_denominator(w, ctx));
  }
};

class SchurIntegrand final : public Integrand {
 public:
  explicit SchurIntegrand(std::vector<MultiIndex> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.empty()) throw DomainError("empty partition list");
    for (const auto& l : lambdas_) top_ = std::max(top_, top_exponent(l));
  }
  std::size_t count() const override { return lambdas_.size(); }
  void weighted_values(const std::vector<Complex>& w, const PrecisionContext& ctx,
                       std::vector<Complex>& out) const override {
    for (const auto& l : lambdas_) {
      if (l.entries.size() != w.size()) throw DomainError("partition length differs from the number of variables");
    }
    auto diffs = power_differences(w, top_);
    out.clear();
    // det(w^{n-j+1} - w^{-(n-j+1)}) = (-1)^n Delta(w)
    const bool flip = w.size() % 2 == 1;
    for (const auto& l : lambdas_) {
      out.push_back(alternant(l, diffs, ctx.prec()));
      if (flip) out.back() = -out.back();
    }
  }

 private:
  std::vector<MultiIndex> lambdas_;
  int top_ = 0;
};

class FunctionIntegrand final : public Integrand {
 public:
  explicit FunctionIntegrand(std::function<Complex(const std::vector<Complex>&)> phi) : phi_(std::move(phi)) {}
  std::size_t count() const override { return 1; }
  void weighted_values(const std::vector<Complex>& w, const PrecisionContext& ctx,
                       std::vector<Complex>& out) const override {
    out.assign(1, phi_(w) * weyl_denominator(w, ctx));
  }

 private:
  std::function<Complex(const std::vector<Complex>&)> phi_;
};

bool negligible(const Complex& factor, const PrecisionContext& ctx) {
  return factor.is_zero() || factor.log2_abs() < -static_cast<double>(ctx.bits()) + 8.0;
}

// Table of (numer; q)_d / (denom; q)_d * c^d for d = -radius..radius, built by
// stepping outward from d = 0.
class ShiftTable {
 public:
  ShiftTable(const std::vector<Complex>& numer, const std::vector<Complex>& denom, const Complex& c, long radius,
             const PrecisionContext& ctx)
      : radius_(radius) {
    values_.assign(static_cast<std::size_t>(2 * radius + 1), ctx.zero());
    values_[static_cast<std::size_t>(radius)] = ctx.one();
    Complex c_inv = inverse(c);
    Complex qd = ctx.one();
    for (long d = 0; d < radius; ++d) {
      Complex num = c;
      Complex den = ctx.one();
      for (const auto& u : numer) num *= one_minus(u * qd);
      for (const auto& u : denom) den *= one_minus(u * qd);
      if (negligible(den, ctx)) throw PoleError("lattice factor denominator vanishes");
      at(d + 1) = at(d) * num / den;
      qd *= ctx.q();
    }
    Complex q_inv = inverse(ctx.q());
    qd = q_inv;
    for (long d = 0; d > -radius; --d) {
      Complex num = c_inv;
      Complex den = ctx.one();
      for (const auto& u : denom) num *= one_minus(u * qd);
      for (const auto& u : numer) den *= one_minus(u * qd);
      if (negligible(den, ctx)) throw PoleError("lattice factor denominator vanishes");
      at(d - 1) = at(d) * num / den;
      qd *= q_inv;
    }
  }

  const Complex& operator[](long d) const { return values_[static_cast<std::size_t>(d + radius_)]; }

 private:
  Complex& at(long d) { return values_[static_cast<std::size_t>(d + radius_)]; }

  long radius_;
  std::vector<Complex> values_;
};

Complex product_of(const std::vector<Complex>& v, const PrecisionContext& ctx) {
  Complex r = ctx.one();
  for (const auto& x : v) r *= x;
  return r;
}

void require_generic_theta(const Complex& u, const PrecisionContext& ctx) {
  if (theta_normalized(u, ctx) < kDefaultGenericityThreshold) {
    throw DegenerateZ("theta factor of the regularizer vanishes");
  }
}

}  // namespace

Complex weyl_denominator(const std::vector<Complex>& z, const PrecisionContext& ctx) {
  require_nonzero(z);
  Complex r = ctx.one();
  for (std::size_t i = 0; i < z.size(); ++i) r *= one_minus(z[i] * z[i]) / z[i];
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t k = j + 1; k < z.size(); ++k) {
      r *= one_minus(z[j] / z[k]) * one_minus(z[j] * z[k]) / z[j];
    }
  }
  return r;
}

Complex schur_numerator(const MultiIndex& lambda, const std::vector<Complex>& z, const PrecisionContext& ctx) {
  require_nonzero(z);
  if (lambda.entries.size() != z.size()) throw DomainError("partition length differs from the number of variables");
  return alternant(lambda, power_differences(z, top_exponent(lambda)), ctx.prec());
}

Complex symplectic_schur(const MultiIndex& lambda, const std::vector<Complex>& z, const PrecisionContext& ctx) {
  require_nonzero(z);
  const std::size_t n = z.size();
  MultiIndex empty{std::vector<int>(n, 0), IndexKind::B};
  auto diffs = power_differences(z, std::max(top_exponent(lambda), static_cast<int>(n)));
  Complex denominator = alternant(empty, diffs, ctx.prec());
  // Hadamard bound on the denominator determinant.
  double log_scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t c = 1; c <= n; ++c) row += std::exp2(std::clamp(diffs[i][c].log2_abs(), -1000.0, 1000.0));
    log_scale += std::log2(row);
  }
  if (denominator.is_zero() || denominator.log2_abs() - log_scale < std::log2(kDefaultGenericityThreshold)) {
    throw DegenerateZ("Weyl denominator vanishes at z");
  }
  if (lambda.entries.size() != n) throw DomainError("partition length differs from the number of variables");
  return alternant(lambda, diffs, ctx.prec()) / denominator;
}

Complex phi_theta_ratio(const std::vector<Complex>& z_in, const ParameterSet& p, const PrecisionContext& ctx) {
  require_nonzero(z_in);
  require_parameters(p, z_in.size());
  std::vector<Complex> z;
  for (const auto& v : z_in) z.push_back(at_precision(v, ctx));
  const Complex& q = ctx.q();
  Complex r = ctx.one();
  for (const auto& zi : z) {
    Complex z2 = zi * zi;
    require_generic_theta(z2, ctx);
    r *= zi / theta(z2, ctx);
    for (const auto& am : p.a) r *= qpoch_inf(q * zi / am, ctx) * qpoch_inf(q / (am * zi), ctx);
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t k = j + 1; k < z.size(); ++k) {
      Complex w = z[j] / z[k];
      Complex w2 = z[j] * z[k];
      require_generic_theta(w, ctx);
      require_generic_theta(w2, ctx);
      r *= z[j] * qpoch_inf(q * w / p.t, ctx) * qpoch_inf(q / (p.t * w), ctx) * qpoch_inf(q * w2 / p.t, ctx) *
           qpoch_inf(q / (p.t * w2), ctx) / (theta(w, ctx) * theta(w2, ctx));
    }
  }
  return r;
}

Complex lattice_shift_factor(const std::vector<Complex>& z, const std::vector<long>& nu, const ParameterSet& p,
                             const PrecisionContext& ctx) {
  require_nonzero(z);
  require_parameters(p, z.size());
  if (nu.size() != z.size()) throw DomainError("shift vector has the wrong length");
  const Complex& q = ctx.q();
  const Complex a_prod = product_of(p.a, ctx);
  const Complex pair_base = q / (p.t * p.t);
  Complex r = ctx.one();
  for (std::size_t i = 0; i < z.size(); ++i) {
    r *= pow(ctx.q_pow(p.s + 1) / a_prod, nu[i]);
    for (const auto& am : p.a) r *= qpoch(am * z[i], nu[i], ctx) / qpoch(q * z[i] / am, nu[i], ctx);
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    for (std::size_t k = j + 1; k < z.size(); ++k) {
      Complex w = z[j] / z[k];
      Complex w2 = z[j] * z[k];
      r *= pow(pair_base, nu[j]);
      r *= qpoch(p.t * w, nu[j] - nu[k], ctx) / qpoch(q * w / p.t, nu[j] - nu[k], ctx);
      r *= qpoch(p.t * w2, nu[j] + nu[k], ctx) / qpoch(q * w2 / p.t, nu[j] + nu[k], ctx);
    }
  }
  return r;
}

std::shared_ptr<const Integrand> constant_integrand() { return std::make_shared<ConstantIntegrand>(); }

std::shared_ptr<const Integrand> schur_integrand(std::vector<MultiIndex> lambdas) {
  return std::make_shared<SchurIntegrand>(std::move(lambdas));
}

std::shared_ptr<const Integrand> function_integrand(std::function<Complex(const std::vector<Complex>&)> phi) {
  return std::make_shared<FunctionIntegrand>(std::move(phi));
}

double invariance_defect(const Integrand& phi, int n, const PrecisionContext& ctx, unsigned long seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.6, 0.9);
  std::uniform_real_distribution<double> phase(-3.0, 3.0);
  double worst = 0.0;
  std::vector<Complex> base_values;
  std::vector<Complex> moved_values;
  for (int sample = 0; sample < samples; ++sample) {
    std::vector<Complex> z;
    for (int i = 0; i < n; ++i) {
      z.push_back(Complex::polar(Real(modulus(rng), ctx.prec()), Real(phase(rng), ctx.prec())));
    }
    std::vector<Complex> moved = z;
    std::shuffle(moved.begin(), moved.end(), rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    auto flip = static_cast<std::size_t>(pick(rng));
    moved[flip] = inverse(moved[flip]);
    // weighted_values returns phi * Delta and Delta changes sign under each
    // transposition and inversion, so compare phi itself.
    phi.weighted_values(z, ctx, base_values);
    phi.weighted_values(moved, ctx, moved_values);
    Complex d0 = weyl_denominator(z, ctx);
    Complex d1 = weyl_denominator(moved, ctx);
    for (std::size_t k = 0; k < base_values.size(); ++k) {
      worst = std::max(worst, relative_difference(base_values[k] / d0, moved_values[k] / d1));
    }
  }
  return worst;
}

LatticeTruncation LatticeTruncation::defaults_for(int n) {
  LatticeTruncation t;
  t.radius = n <= 2 ? 40 : 25;
  t.shell_stop = n <= 2 ? 1e-30 : 1e-20;
  return t;
}

RegularizedValue regularized_integral(const Integrand& phi, const std::vector<Complex>& z_in, const ParameterSet& p,
                                      const LatticeTruncation& trunc, const PrecisionContext& ctx) {
  if (trunc.radius < 1 || trunc.max_terms < 1 || !(trunc.shell_stop > 0.0)) {
    throw DomainError("invalid lattice truncation");
  }
  require_nonzero(z_in);
  require_parameters(p, z_in.size());
  const int n = p.n;
  const long radius = trunc.radius;
  const auto un = static_cast<std::size_t>(n);
  std::vector<Complex> z;
  for (const auto& v : z_in) z.push_back(at_precision(v, ctx));
  const Complex& q = ctx.q();
  const Complex t = at_precision(p.t, ctx);

  const Complex prefactor = pow(one_minus(q), n) * phi_theta_ratio(z, p, ctx);

  // Phi(z q^nu)/Phi(z) = prod_j A_j(nu_j) prod_{j<k} B_jk(nu_j - nu_k) C_jk(nu_j + nu_k).
  const Complex base = ctx.q_pow(p.s + 1) / product_of(p.a, ctx);
  const Complex pair_base = q / (t * t);
  std::vector<ShiftTable> single;
  for (std::size_t j = 0; j < un; ++j) {
    std::vector<Complex> numer, denom;
    for (const auto& am : p.a) {
      numer.push_back(am * z[j]);
      denom.push_back(q * z[j] / am);
    }
    single.emplace_back(numer, denom, base * pow(pair_base, n - 1 - static_cast<long>(j)), radius, ctx);
  }
  std::vector<ShiftTable> diff, sum;
  for (std::size_t j = 0; j < un; ++j) {
    for (std::size_t k = j + 1; k < un; ++k) {
      Complex w = z[j] / z[k];
      Complex w2 = z[j] * z[k];
      diff.emplace_back(std::vector<Complex>{t * w}, std::vector<Complex>{q * w / t}, ctx.one(), 2 * radius, ctx);
      sum.emplace_back(std::vector<Complex>{t * w2}, std::vector<Complex>{q * w2 / t}, ctx.one(), 2 * radius, ctx);
    }
  }
  std::vector<std::vector<Complex>> lattice(un);
  for (std::size_t j = 0; j < un; ++j) {
    for (long v = -radius; v <= radius; ++v) lattice[j].push_back(z[j] * ctx.q_pow(v));
  }

  const std::size_t count = phi.count();
  std::vector<CompensatedSum> total(count, CompensatedSum(ctx.prec()));
  std::vector<double> shell_rel;
  double log2_max_term = -std::numeric_limits<double>::infinity();
  long terms = 0;
  int quiet = 0;
  bool converged = false;
  int radius_used = 0;

  std::vector<long> nu(un);
  std::vector<Complex> point(un);
  std::vector<Complex> weights;
  for (long r = 0; r <= radius; ++r) {
    std::vector<CompensatedSum> shell(count, CompensatedSum(ctx.prec()));
    std::fill(nu.begin(), nu.end(), -r);
    while (true) {
      long norm = 0;
      for (auto v : nu) norm = std::max(norm, std::labs(v));
      if (norm == r) {
        Complex factor = single[0][nu[0]];
        for (std::size_t j = 1; j < un; ++j) factor *= single[j][nu[j]];
        std::size_t pair = 0;
        for (std::size_t j = 0; j < un; ++j) {
          for (std::size_t k = j + 1; k < un; ++k, ++pair) {
            factor *= diff[pair][nu[j] - nu[k]];
            factor *= sum[pair][nu[j] + nu[k]];
          }
        }
        if (!factor.is_zero()) {
          for (std::size_t j = 0; j < un; ++j) point[j] = lattice[j][static_cast<std::size_t>(nu[j] + radius)];
          phi.weighted_values(point, ctx, weights);
          for (std::size_t k = 0; k < count; ++k) {
            Complex term = factor * weights[k];
            log2_max_term = std::max(log2_max_term, term.log2_abs());
            shell[k].add(term);
            total[k].add(term);
          }
        }
        if (++terms > trunc.max_terms) throw Unconverged("lattice sum exceeded the term cap");
      }
      std::size_t pos = un;
      while (pos > 0 && nu[pos - 1] == r) {
        nu[pos - 1] = -r;
        --pos;
      }
      if (pos == 0) break;
      ++nu[pos - 1];
    }
    radius_used = static_cast<int>(r);
    if (r == 0) continue;
    double rel = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      Complex s = shell[k].value();
      if (s.is_zero()) continue;
      Complex tot = total[k].value();
      rel = std::max(rel, tot.is_zero() ? std::numeric_limits<double>::infinity()
                                        : std::exp2(s.log2_abs() - tot.log2_abs()));
    }
    shell_rel.push_back(rel);
    quiet = rel < trunc.shell_stop ? quiet + 1 : 0;
    if (quiet >= 2) {
      converged = true;
      break;
    }
  }

  RegularizedValue out;
  double log2_total = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < count; ++k) {
    Complex v = total[k].value();
    log2_total = std::min(log2_total, v.log2_abs());
    out.values.push_back(prefactor * v);
  }
  out.last_shell_rel = shell_rel.empty() ? 0.0 : shell_rel.back();
  // Geometric mean ratio over the last (up to) five shell ratios with nonzero shells.
  double log_ratio = 0.0;
  int ratios = 0;
  for (std::size_t i = shell_rel.size(); i >= 2 && ratios < 5; --i) {
    if (shell_rel[i - 1] <= 0.0 || shell_rel[i - 2] <= 0.0) break;
    log_ratio += std::log(shell_rel[i - 1] / shell_rel[i - 2]);
    ++ratios;
  }
  out.decay_ratio = ratios > 0 ? std::exp(log_ratio / ratios) : 0.0;
  double tail = out.last_shell_rel;
  if (out.decay_ratio >= 1.0) {
    tail *= static_cast<double>(radius);
  } else if (out.decay_ratio > 0.5) {
    tail *= out.decay_ratio / (1.0 - out.decay_ratio);
  }
  double rounding = std::isfinite(log2_total) && std::isfinite(log2_max_term)
                        ? std::exp2(log2_max_term - log2_total - static_cast<double>(ctx.bits()) + 4.0)
                        : 0.0;
  out.shell_error = std::max(tail + rounding, ctx.eps_product());
  out.terms_used = terms;
  out.radius_used = radius_used;
  out.converged = converged;
  if (!converged && trunc.require_convergence) {
    throw Unconverged("lattice sum did not reach the shell-decay target by radius " + std::to_string(radius));
  }
  return out;
}

Complex vandiejen_product(const ParameterSet& p, const PrecisionContext& ctx) {
  if (p.s != 1 || p.a.size() != 4) throw DomainError("van Diejen product needs s = 1 and four values a_m");
  const Complex& q = ctx.q();
  const Complex t = at_precision(p.t, ctx);
  const Complex a_prod = product_of(p.a, ctx);
  Complex r = ctx.one();
  std::vector<Complex> denom;
  for (int k = 1; k <= p.n; ++k) {
    r *= one_minus(q) * qpoch_inf(q, ctx) * qpoch_inf(q * pow(t, -k), ctx) / qpoch_inf(q / t, ctx);
    Complex tk = pow(t, -(p.n - k));
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) r *= qpoch_inf(q * tk / (p.a[i] * p.a[j]), ctx);
    }
    denom.push_back(q * pow(t, -(p.n + k - 2)) / a_prod);
  }
  return r / qpoch_inf_product(denom, ctx, true);
}

IdentityResidual vandiejen_residual(const ParameterSet& p, const std::vector<Complex>& z,
                                    const LatticeTruncation& trunc, const PrecisionContext& ctx) {
  Complex rhs = vandiejen_product(p, ctx);
  auto lhs = regularized_integral(ConstantIntegrand(), z, p, trunc, ctx);
  return {relative_difference(lhs.value(), rhs), lhs.shell_error};
}

Complex wronskian_closed(const ParameterSet& p, const PrecisionContext& ctx) {
  p.validate();
  const int s = p.s;
  const int n = p.n;
  const Complex& q = ctx.q();
  const Complex t = at_precision(p.t, ctx);
  const Complex a_prod = product_of(p.a, ctx);
  const Complex common = one_minus(q) * qpoch_inf(q, ctx) / qpoch_inf(q / t, ctx);
  Complex r = ctx.one();
  for (int k = 1; k <= n; ++k) {
    Complex f = pow(common * qpoch_inf(q * pow(t, -(n - k + 1)), ctx), s);
    Complex tk = pow(t, -(n - k));
    for (std::size_t i = 0; i < p.a.size(); ++i) {
      for (std::size_t j = i + 1; j < p.a.size(); ++j) f *= qpoch_inf(q * tk / (p.a[i] * p.a[j]), ctx);
    }
    f /= qpoch_inf_product({q * pow(t, -(n + k - 2)) / a_prod}, ctx, true);
    r *= pow(f, binomial(s + k - 2, k - 1));

    if (s < 2) continue;
    Complex g = ctx.one();
    for (int rr = 0; rr <= n - k; ++rr) {
      Complex tr = pow(t, rr);
      Complex shift = pow(t, 2 * rr - (n - k));
      Complex tm = pow(t, n - k);
      for (std::size_t i = 0; i < p.x.size(); ++i) {
        for (std::size_t j = i + 1; j < p.x.size(); ++j) {
          g *= theta(shift * p.x[i] / p.x[j], ctx) * theta(tm * p.x[i] * p.x[j], ctx) / (tr * p.x[i]);
        }
      }
    }
    r *= pow(g, binomial(s + k - 3, k - 1));
  }
  return r;
}

WronskianMatrix wronskian_matrix(const ParameterSet& p, const LatticeTruncation& trunc, const PrecisionContext& ctx) {
  p.validate();
  auto rows = enumerate(IndexKind::B, p.s, p.n);
  auto cols = enumerate(IndexKind::Z, p.s, p.n);
  if (rows.size() != cols.size()) throw DomainError("index sets of different sizes");
  SchurIntegrand phi(rows);
  WronskianMatrix out{ComplexMatrix(rows.size(), cols.size(), ctx.prec()), 0.0, 0};
  for (std::size_t c = 0; c < cols.size(); ++c) {
    auto v = regularized_integral(phi, point_x_mu(p, cols[c]), p, trunc, ctx);
    for (std::size_t r = 0; r < rows.size(); ++r) out.entries(r, c) = v.values[r];
    out.shell_error = std::max(out.shell_error, v.shell_error);
    out.terms_used += v.terms_used;
  }
  return out;
}

WronskianCheck wronskian_check(const ParameterSet& p, const LatticeTruncation& trunc, const PrecisionContext& ctx,
                               std::size_t max_dim) {
  const auto dim = static_cast<std::size_t>(binomial(p.s + p.n - 1, p.n));
  if (dim > max_dim) {
    throw ConfigError("Wronskian matrix of size " + std::to_string(dim) + " exceeds the cap " +
                      std::to_string(max_dim));
  }
  auto m = wronskian_matrix(p, trunc, ctx);
  LuDecomposition lu(m.entries);
  WronskianCheck out{lu.determinant(), wronskian_closed(p, ctx), {}};
  double condition = std::isfinite(lu.condition_estimate()) ? lu.condition_estimate() : 1.0 / ctx.eps_product();
  out.residual = {relative_difference(out.numeric, out.closed),
                  m.shell_error * std::max(1.0, condition) * static_cast<double>(dim)};
  return out;
}

ConnectionCheck connection_check(ConnectionIntegrand kind, const std::vector<Complex>& z, const ParameterSet& p,
                                 const LatticeTruncation& trunc, const PrecisionContext& ctx) {
  p.validate();
  std::shared_ptr<const Integrand> phi = kind == ConnectionIntegrand::One
                                             ? constant_integrand()
                                             : schur_integrand(enumerate(IndexKind::B, p.s, p.n));
  LagrangeBasis basis(p, ctx);
  auto lhs = regularized_integral(*phi, z, p, trunc, ctx);
  auto e = basis.evaluate_all(z, InterpMethod::Explicit);
  ConnectionCheck out;
  out.lhs = lhs.values;
  std::vector<CompensatedSum> rhs(phi->count(), CompensatedSum(ctx.prec()));
  // Absolute truncation error carried by each right-hand side, in units of |term|.
  std::vector<double> spread(phi->count(), 0.0);
  for (std::size_t m = 0; m < basis.indices().size(); ++m) {
    auto v = regularized_integral(*phi, basis.point(basis.indices()[m]), p, trunc, ctx);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
      Complex term = v.values[k] * e[m];
      spread[k] += v.shell_error * term.abs_approx();
      rhs[k].add(term);
    }
  }
  double residual = 0.0;
  double shell = lhs.shell_error;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    out.rhs.push_back(rhs[k].value());
    residual = std::max(residual, relative_difference(out.lhs[k], out.rhs[k]));
    double size = out.rhs[k].abs_approx();
    shell = std::max(shell, lhs.shell_error + (size > 0.0 ? spread[k] / size : 0.0));
  }
  out.residual = {residual, shell};
  return out;
}

SlaterMatch slater_match(const Complex& z_in, const ParameterSet& p, const LatticeTruncation& trunc,
                         const PrecisionContext& ctx) {
  if (p.s != 2 || p.n != 1) throw DomainError("the Slater case needs s = 2 and n = 1");
  p.validate();
  const Complex z = at_precision(z_in, ctx);
  std::vector<Complex> aux, b;
  for (const auto& xi : p.x) aux.push_back(z * xi);
  for (const auto& am : p.a) b.push_back(am * z);
  const Complex zz = z * z;
  auto sides = slater_sides(4, zz, aux, b, ctx);

  SlaterMatch out;
  out.slater_residual = relative_difference(sides.lhs, sides.rhs);
  const Complex scale = one_minus(ctx.q()) * phi_theta_ratio({z}, p, ctx) * weyl_denominator({z}, ctx);
  ConstantIntegrand one;
  auto lhs = regularized_integral(one, {z}, p, trunc, ctx);
  out.shell_error = lhs.shell_error;
  out.lhs_match = relative_difference(lhs.value(), scale * sides.lhs);
  LagrangeBasis basis(p, ctx);
  auto e = basis.evaluate_all({z});
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    MultiIndex unit{{0, 0}, IndexKind::Z};
    unit.entries[i] = 1;
    auto pos = basis.position(unit);
    auto v = regularized_integral(one, basis.point(unit), p, trunc, ctx);
    out.shell_error = std::max(out.shell_error, v.shell_error);
    out.term_match.push_back(relative_difference(v.value() * e[pos], scale * sides.rhs_terms[i]));
  }
  return out;
}

IdentityResidual quasi_periodicity_residual(const Integrand& phi, const std::vector<Complex>& z,
                                            const ParameterSet& p, const LatticeTruncation& trunc,
                                            const PrecisionContext& ctx) {
  auto base = regularized_integral(phi, z, p, trunc, ctx);
  IdentityResidual out{0.0, base.shell_error};
  for (std::size_t i = 0; i < z.size(); ++i) {
    auto moved = z;
    moved[i] = at_precision(moved[i], ctx) * ctx.q();
    auto v = regularized_integral(phi, moved, p, trunc, ctx);
    Complex factor = pow(ctx.q() * z[i] * z[i], p.s - 1);
    for (std::size_t k = 0; k < v.values.size(); ++k) {
      out.residual = std::max(out.residual, relative_difference(v.values[k] * factor, base.values[k]));
    }
    out.shell_error = std::max(out.shell_error, v.shell_error);
  }
  return out;
}

IdentityResidual weyl_invariance_residual(const Integrand& phi, const std::vector<Complex>& z, const ParameterSet& p,
                                          const LatticeTruncation& trunc, const PrecisionContext& ctx,
                                          unsigned long seed) {
  std::mt19937_64 rng(seed);
  auto moved = z;
  std::shuffle(moved.begin(), moved.end(), rng);
  std::bernoulli_distribution flip(0.5);
  bool any = false;
  for (auto& v : moved) {
    if (flip(rng)) {
      v = inverse(at_precision(v, ctx));
      any = true;
    }
  }
  if (!any) moved.front() = inverse(at_precision(moved.front(), ctx));
  auto base = regularized_integral(phi, z, p, trunc, ctx);
  auto v = regularized_integral(phi, moved, p, trunc, ctx);
  IdentityResidual out{0.0, std::max(base.shell_error, v.shell_error)};
  for (std::size_t k = 0; k < v.values.size(); ++k) {
    out.residual = std::max(out.residual, relative_difference(v.values[k], base.values[k]));
  }
  return out;
}

IdentityResidual lattice_invariance_residual(const Integrand& phi, const std::vector<Complex>& z,
                                             const std::vector<long>& shift, const ParameterSet& p,
                                             const LatticeTruncation& trunc, const PrecisionContext& ctx) {
  if (shift.size() != z.size()) throw DomainError("shift vector has the wrong length");
  std::vector<Complex> moved;
  // <<phi, w q^{e_i}>> = (q w_i^2)^{1-s} <<phi, w>>, applied one step at a time.
  Complex factor = ctx.one();
  for (std::size_t i = 0; i < z.size(); ++i) {
    Complex w = at_precision(z[i], ctx);
    for (long step = 0; step < std::labs(shift[i]); ++step) {
      if (shift[i] > 0) {
        factor *= pow(ctx.q() * w * w, p.s - 1);
        w *= ctx.q();
      } else {
        w /= ctx.q();
        factor /= pow(ctx.q() * w * w, p.s - 1);
      }
    }
    moved.push_back(w);
  }
  auto base = regularized_integral(phi, z, p, trunc, ctx);
  auto v = regularized_integral(phi, moved, p, trunc, ctx);
  IdentityResidual out{0.0, std::max(base.shell_error, v.shell_error)};
  for (std::size_t k = 0; k < v.values.size(); ++k) {
    out.residual = std::max(out.residual, relative_difference(v.values[k] * factor, base.values[k]));
  }
  return out;
}

}  // namespace qlag
