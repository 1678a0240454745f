#include "qlag/interp.hpp"

#include "qlag/errors.hpp"
#include "qlag/qnum.hpp"
#include "qlag/summation.hpp"

#include <algorithm>

namespace qlag {

std::string_view method_name(InterpMethod m) {
  switch (m) {
    case InterpMethod::Explicit:
      return "explicit";
    case InterpMethod::Recursive:
      return "recursive";
    case InterpMethod::Triangular:
      return "triangular";
  }
  return "?";
}

Complex kernel_psi(const std::vector<Complex>& z, const std::vector<Complex>& y, const PrecisionContext& ctx) {
  Complex out = ctx.one();
  for (const auto& zi : z) {
    for (const auto& yj : y) out *= e_symbol(zi, yj, ctx);
  }
  return out;
}

Complex f_dual(const std::vector<Complex>& x, const Complex& t, const MultiIndex& mu, const std::vector<Complex>& y,
               const PrecisionContext& ctx) {
  if (mu.size() != x.size()) throw DomainError("f_dual: index length differs from s");
  Complex out = ctx.one();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (const auto& yj : y) out *= e_factorial(x[i], yj, t, mu[i], ctx);
  }
  return out;
}

ComplexMatrix neumann_inverse(const ComplexMatrix& a, std::size_t max_dim) {
  const std::size_t n = a.rows();
  if (!a.is_square()) throw DomainError("neumann_inverse needs a square matrix");
  if (n > max_dim) throw DomainError("neumann_inverse is limited to small matrices");
  const mpfr_prec_t p = a.precision();
  // A = D (I + D^-1 B), A^-1 = sum_r (-D^-1 B)^r D^-1
  ComplexMatrix d_inv(n, n, p), minus_m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i).is_zero()) throw PoleError("neumann_inverse: zero diagonal entry");
    d_inv(i, i) = inverse(a(i, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) minus_m(i, j) = -(d_inv(i, i) * a(i, j));
  }
  ComplexMatrix term = d_inv;
  ComplexMatrix acc = d_inv;
  for (std::size_t r = 1; r < n; ++r) {
    term = minus_m * term;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) acc(i, j) += term(i, j);
    }
  }
  return acc;
}

namespace {

double e_symbol_normalized(const Complex& a, const Complex& b, const PrecisionContext& ctx) {
  return theta_normalized(a * b, ctx) * theta_normalized(a / b, ctx);
}

}  // namespace

LagrangeBasis::LagrangeBasis(std::vector<Complex> x, Complex t, int n, const PrecisionContext& ctx, double delta)
    : x_(std::move(x)), t_(std::move(t)), n_(n), ctx_(ctx), delta_(delta) {
  if (x_.empty() || n_ < 1) throw DomainError("interpolation basis needs s, n >= 1");
  if (t_.is_zero()) throw ZeroArgument("t must be nonzero");
  for (auto& v : x_) {
    if (v.is_zero()) throw ZeroArgument("x_i must be nonzero");
    v = at_precision(v, ctx_);
  }
  t_ = at_precision(t_, ctx_);
  indices_ = enumerate(IndexKind::Z, s(), n_);

  const int sn = s();
  for (int j = 0; j < sn; ++j) {
    Complex v = x_[static_cast<std::size_t>(j)];
    for (int c = 0; c <= n_; ++c) {
      xt_.push_back(v);
      v *= t_;
    }
  }
  inv_denom_.assign(static_cast<std::size_t>(sn * (n_ + 1) * sn * (n_ + 1)), Complex(ctx_.prec()));
  for (int i = 0; i < sn; ++i) {
    for (int j = 0; j < sn; ++j) {
      if (i == j) continue;
      for (int ci = 0; ci < n_; ++ci) {
        for (int cj = 0; ci + cj < n_; ++cj) {
          const Complex& a = xt(i, ci);
          const Complex& b = xt(j, cj);
          if (e_symbol_normalized(a, b, ctx_) < delta_) {
            throw NonGenericError("x is not generic: e(x_" + std::to_string(i + 1) + " t^" + std::to_string(ci) +
                                  "; x_" + std::to_string(j + 1) + " t^" + std::to_string(cj) + ") nearly vanishes");
          }
          inv_denom_[static_cast<std::size_t>(((i * (n_ + 1) + ci) * sn + j) * (n_ + 1) + cj)] =
              inverse(e_symbol(a, b, ctx_));
        }
      }
    }
  }
}

LagrangeBasis::LagrangeBasis(const ParameterSet& p, const PrecisionContext& ctx, double delta)
    : LagrangeBasis(p.x, p.t, p.n, ctx, delta) {}

const Complex& LagrangeBasis::inv_denominator(int i, int ci, int j, int cj) const {
  return inv_denom_[static_cast<std::size_t>(((i * (n_ + 1) + ci) * s() + j) * (n_ + 1) + cj)];
}

std::size_t LagrangeBasis::position(const MultiIndex& lambda) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), lambda);
  if (it == indices_.end() || !(*it == lambda)) throw DomainError("index " + lambda.to_string() + " not in Z_{s,n}");
  return static_cast<std::size_t>(it - indices_.begin());
}

std::vector<Complex> LagrangeBasis::point(const MultiIndex& mu) const {
  ParameterSet p;
  p.s = s();
  p.n = n_;
  p.t = t_;
  p.x = x_;
  return point_x_mu(p, mu);
}

std::vector<Complex> LagrangeBasis::eta(const MultiIndex& nu) const {
  if (s() < 2) throw DomainError("eta needs s >= 2");
  std::vector<Complex> out;
  for (int i = 0; i + 1 < s(); ++i) out.push_back(xt(i, nu[static_cast<std::size_t>(i)]));
  return out;
}

void LagrangeBasis::check_point(const std::vector<Complex>& z) const {
  if (static_cast<int>(z.size()) != n_) throw DomainError("point must have n coordinates");
  for (const auto& v : z) {
    if (v.is_zero()) throw ZeroArgument("z_k must be nonzero");
  }
}

// numer[(j (n+1) + c) n + k] = e(z_k; x_j t^c)
std::vector<Complex> LagrangeBasis::numerator_table(const std::vector<Complex>& z) const {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(s() * (n_ + 1) * n_));
  for (int j = 0; j < s(); ++j) {
    for (int c = 0; c <= n_; ++c) {
      for (int k = 0; k < n_; ++k) out.push_back(e_symbol(z[static_cast<std::size_t>(k)], xt(j, c), ctx_));
    }
  }
  return out;
}

Complex LagrangeBasis::explicit_value(const MultiIndex& lambda, const std::vector<Complex>& numer) const {
  const int sn = s();
  CompensatedSum sum(ctx_.prec());
  PartitionEnumerator parts(lambda);
  SetPartition part({}, sn);
  std::vector<int> counts(static_cast<std::size_t>(sn));
  while (parts.next(part)) {
    std::fill(counts.begin(), counts.end(), 0);
    Complex term = ctx_.one();
    for (int k = 0; k < n_; ++k) {
      const int i = part.labels()[static_cast<std::size_t>(k)];
      const int ci = counts[static_cast<std::size_t>(i)];
      for (int j = 0; j < sn; ++j) {
        if (j == i) continue;
        const int cj = counts[static_cast<std::size_t>(j)];
        term *= numer[static_cast<std::size_t>((j * (n_ + 1) + cj) * n_ + k)];
        term *= inv_denominator(i, ci, j, cj);
      }
      ++counts[static_cast<std::size_t>(i)];
    }
    sum.add(term);
  }
  return sum.value();
}

Complex LagrangeBasis::recursive_value(const MultiIndex& lambda, const std::vector<Complex>& z) const {
  const int sn = s();
  std::map<std::vector<int>, Complex> memo;
  // W(c) = sum over completions of the prefix with counts c of the remaining
  // one-variable factors E_{eps_i}(x t^c; z_k).
  auto factor = [&](int k, int i, const std::vector<int>& c) {
    Complex xi = x_[static_cast<std::size_t>(i)] * pow(t_, c[static_cast<std::size_t>(i)]);
    Complex out = ctx_.one();
    for (int j = 0; j < sn; ++j) {
      if (j == i) continue;
      Complex xj = x_[static_cast<std::size_t>(j)] * pow(t_, c[static_cast<std::size_t>(j)]);
      out *= e_symbol(z[static_cast<std::size_t>(k)], xj, ctx_);
      out /= e_symbol(xi, xj, ctx_);
    }
    return out;
  };
  auto solve = [&](auto&& self, std::vector<int>& c, int k) -> Complex {
    if (k == n_) return ctx_.one();
    auto found = memo.find(c);
    if (found != memo.end()) return found->second;
    CompensatedSum sum(ctx_.prec());
    for (int i = 0; i < sn; ++i) {
      if (c[static_cast<std::size_t>(i)] >= lambda[static_cast<std::size_t>(i)]) continue;
      Complex f = factor(k, i, c);
      ++c[static_cast<std::size_t>(i)];
      Complex rest = self(self, c, k + 1);
      --c[static_cast<std::size_t>(i)];
      sum.add(f * rest);
    }
    Complex value = sum.value();
    memo.emplace(c, value);
    return value;
  };
  std::vector<int> c(static_cast<std::size_t>(sn), 0);
  return solve(solve, c, 0);
}

Complex LagrangeBasis::triangular_value(const MultiIndex& lambda, const std::vector<Complex>& z) const {
  if (s() == 1) return ctx_.one();
  const std::size_t col = position(lambda);
  const ComplexMatrix& gm = g();
  CompensatedSum sum(ctx_.prec());
  for (std::size_t r = 0; r <= col; ++r) {
    if (gm(r, col).is_zero()) continue;
    sum.add(kernel_psi(z, eta(indices_[r]), ctx_) * gm(r, col));
  }
  return sum.value();
}

Complex LagrangeBasis::evaluate(const MultiIndex& lambda, const std::vector<Complex>& z, InterpMethod method) const {
  check_point(z);
  if (!is_valid(lambda, s(), n_) || lambda.kind != IndexKind::Z) {
    throw DomainError("index " + lambda.to_string() + " not in Z_{s,n}");
  }
  switch (method) {
    case InterpMethod::Explicit:
      return explicit_value(lambda, numerator_table(z));
    case InterpMethod::Recursive:
      return recursive_value(lambda, z);
    case InterpMethod::Triangular:
      return triangular_value(lambda, z);
  }
  throw DomainError("unknown interpolation method");
}

std::vector<Complex> LagrangeBasis::evaluate_all(const std::vector<Complex>& z, InterpMethod method) const {
  check_point(z);
  std::vector<Complex> out;
  out.reserve(indices_.size());
  if (method == InterpMethod::Explicit) {
    auto numer = numerator_table(z);
    for (const auto& lambda : indices_) out.push_back(explicit_value(lambda, numer));
  } else if (method == InterpMethod::Triangular && s() > 1) {
    const ComplexMatrix& gm = g();
    std::vector<Complex> psi;
    for (const auto& mu : indices_) psi.push_back(kernel_psi(z, eta(mu), ctx_));
    for (std::size_t col = 0; col < indices_.size(); ++col) {
      CompensatedSum sum(ctx_.prec());
      for (std::size_t r = 0; r <= col; ++r) sum.add(psi[r] * gm(r, col));
      out.push_back(sum.value());
    }
  } else {
    for (const auto& lambda : indices_) out.push_back(evaluate(lambda, z, method));
  }
  return out;
}

const ComplexMatrix& LagrangeBasis::f() const {
  if (f_) return *f_;
  if (s() < 2) throw DomainError("the F matrix needs s >= 2");
  const std::size_t dim = indices_.size();
  auto m = std::make_unique<ComplexMatrix>(dim, dim, ctx_.prec());
  for (std::size_t c = 0; c < dim; ++c) {
    auto y = eta(indices_[c]);
    for (std::size_t r = 0; r < dim; ++r) (*m)(r, c) = f_dual(x_, t_, indices_[r], y, ctx_);
  }
  for (std::size_t d = 0; d < dim; ++d) {
    const MultiIndex& mu = indices_[d];
    for (int i = 0; i < s(); ++i) {
      for (int j = 0; j + 1 < s(); ++j) {
        for (int r = 0; r < mu[static_cast<std::size_t>(i)]; ++r) {
          if (e_symbol_normalized(xt(i, r), xt(j, mu[static_cast<std::size_t>(j)]), ctx_) < delta_) {
            throw NonGenericError("F diagonal entry at " + mu.to_string() + " nearly vanishes");
          }
        }
      }
    }
  }
  f_ = std::move(m);
  return *f_;
}

const ComplexMatrix& LagrangeBasis::g() const {
  if (!g_) g_ = std::make_unique<ComplexMatrix>(upper_triangular_inverse(f()));
  return *g_;
}

Complex e_interp(const MultiIndex& lambda, const std::vector<Complex>& z, InterpMethod method, const ParameterSet& p,
                 const PrecisionContext& ctx) {
  return LagrangeBasis(p, ctx).evaluate(lambda, z, method);
}

double duality_residual(const std::vector<Complex>& z, const std::vector<Complex>& y, const LagrangeBasis& basis,
                        const PrecisionContext& ctx) {
  if (static_cast<int>(y.size()) != basis.s() - 1) throw DomainError("y must have s - 1 coordinates");
  Complex lhs = kernel_psi(z, y, ctx);
  auto e = basis.evaluate_all(z);
  CompensatedSum rhs(ctx.prec());
  for (std::size_t k = 0; k < e.size(); ++k) rhs.add(e[k] * f_dual(basis.x(), basis.t(), basis.indices()[k], y, ctx));
  return relative_difference(lhs, rhs.value());
}

}  // namespace qlag
