#include "qlag/transition.hpp"

#include "qlag/errors.hpp"
#include "qlag/qnum.hpp"

#include <algorithm>

namespace qlag {

TransitionMatrix transition_matrix(const std::vector<Complex>& x, const std::vector<Complex>& y, const Complex& t,
                                   int n, const PrecisionContext& ctx) {
  if (x.size() != y.size()) throw DomainError("x and y must have the same length");
  LagrangeBasis basis(x, t, n, ctx);
  LagrangeBasis target(y, t, n, ctx);
  const auto& idx = basis.indices();
  TransitionMatrix out{x, y, idx, ComplexMatrix(idx.size(), idx.size(), ctx.prec())};
  for (std::size_t c = 0; c < idx.size(); ++c) {
    auto column = basis.evaluate_all(target.point(idx[c]));
    for (std::size_t r = 0; r < idx.size(); ++r) out.entries(r, c) = std::move(column[r]);
  }
  return out;
}

TransitionMatrix transition_matrix(const ParameterSet& p, const std::vector<Complex>& y, const PrecisionContext& ctx) {
  return transition_matrix(p.x, y, p.t, p.n, ctx);
}

namespace {

void require_generic(const Complex& a, const Complex& b, const PrecisionContext& ctx) {
  if (theta_normalized(a * b, ctx) * theta_normalized(a / b, ctx) < kDefaultGenericityThreshold) {
    throw NonGenericError("vanishing e-symbol in a determinant denominator");
  }
}

// e(a; b) / e(c; d) with a genericity check on the denominator.
Complex e_ratio(const Complex& a, const Complex& b, const Complex& c, const Complex& d, const PrecisionContext& ctx) {
  require_generic(c, d, ctx);
  return e_symbol(a, b, ctx) / e_symbol(c, d, ctx);
}

}  // namespace

Complex transition_det_closed(const std::vector<Complex>& x, const std::vector<Complex>& y, const Complex& t, int n,
                              const PrecisionContext& ctx, DeterminantForm form) {
  if (x.size() != y.size()) throw DomainError("x and y must have the same length");
  const int s = static_cast<int>(x.size());
  Complex result = ctx.one();
  for (int k = 1; k <= n; ++k) {
    const long exponent = binomial(s + k - 3, k - 1);
    const int m = n - k;
    Complex block = ctx.one();
    for (int r = 0; r <= m; ++r) {
      for (int i = 0; i < s; ++i) {
        for (int j = i + 1; j < s; ++j) {
          const Complex& xi = x[static_cast<std::size_t>(i)];
          const Complex& xj = x[static_cast<std::size_t>(j)];
          const Complex& yi = y[static_cast<std::size_t>(i)];
          const Complex& yj = y[static_cast<std::size_t>(j)];
          if (form == DeterminantForm::ESymbol) {
            block *= e_ratio(yi * pow(t, r), yj * pow(t, m - r), xi * pow(t, r), xj * pow(t, m - r), ctx);
          } else {
            Complex tm = pow(t, m);
            Complex tr = pow(t, 2 * r - m);
            Complex den = yi * theta(tr * xi / xj, ctx) * theta(tm * xi * xj, ctx);
            if (theta_normalized(tr * xi / xj, ctx) * theta_normalized(tm * xi * xj, ctx) < kDefaultGenericityThreshold) {
              throw NonGenericError("vanishing theta in a determinant denominator");
            }
            block *= xi * theta(tr * yi / yj, ctx) * theta(tm * yi * yj, ctx) / den;
          }
        }
      }
    }
    result *= pow(block, exponent);
  }
  return result;
}

Complex one_coordinate_det_closed(const std::vector<Complex>& x, const Complex& new_value, int l, const Complex& t,
                                  int n, const PrecisionContext& ctx) {
  const int s = static_cast<int>(x.size());
  if (l < 0 || l >= s) throw DomainError("coordinate index out of range");
  const Complex& xl = x[static_cast<std::size_t>(l)];
  Complex result = ctx.one();
  for (int k = 1; k <= n; ++k) {
    const long exponent = binomial(s + k - 3, k - 1);
    const int m = n - k;
    Complex block = ctx.one();
    for (int r = 0; r <= m; ++r) {
      for (int i = 0; i < l; ++i) {
        Complex xi = x[static_cast<std::size_t>(i)] * pow(t, r);
        block *= e_ratio(xi, new_value * pow(t, m - r), xi, xl * pow(t, m - r), ctx);
      }
      for (int j = l + 1; j < s; ++j) {
        Complex xj = x[static_cast<std::size_t>(j)] * pow(t, m - r);
        block *= e_ratio(new_value * pow(t, r), xj, xl * pow(t, r), xj, ctx);
      }
    }
    result *= pow(block, exponent);
  }
  return result;
}

OneCoordinateFactor one_coordinate_factor(const std::vector<Complex>& x, const Complex& new_value, int l,
                                          const Complex& t, int n, const PrecisionContext& ctx) {
  const int s = static_cast<int>(x.size());
  if (l < 0 || l >= s) throw DomainError("coordinate index out of range");
  std::vector<Complex> y = x;
  y[static_cast<std::size_t>(l)] = new_value;
  OneCoordinateFactor out{l, transition_matrix(x, y, t, n, ctx), {}, ctx.one()};
  const auto& idx = out.matrix.indices;
  const auto& e = out.matrix.entries;
  const Complex& xl = x[static_cast<std::size_t>(l)];

  for (std::size_t a = 0; a < idx.size(); ++a) {
    const MultiIndex& alpha = idx[a];
    const int al = alpha[static_cast<std::size_t>(l)];
    Complex d = ctx.one();
    for (int i = 0; i < s; ++i) {
      if (i == l) continue;
      Complex base = x[static_cast<std::size_t>(i)] * pow(t, alpha[static_cast<std::size_t>(i)]);
      Complex num = e_factorial(new_value, base, t, al, ctx);
      Complex den = e_factorial(xl, base, t, al, ctx);
      for (int r = 0; r < al; ++r) require_generic(xl * pow(t, r), base, ctx);
      d *= num / den;
    }
    out.diagonal_residual = std::max(out.diagonal_residual, relative_difference(d, e(a, a)));
    out.closed_diagonal.push_back(std::move(d));

    const double row = e.row_norm(a);
    for (std::size_t b = 0; b < idx.size(); ++b) {
      bool forbidden = false;
      for (int i = 0; i < s; ++i) {
        if (i != l && alpha[static_cast<std::size_t>(i)] < idx[b][static_cast<std::size_t>(i)]) forbidden = true;
      }
      if (forbidden) out.forbidden_entry_ratio = std::max(out.forbidden_entry_ratio, e(a, b).abs_approx() / row);
    }
  }

  out.closed_determinant = one_coordinate_det_closed(x, new_value, l, t, n, ctx);
  return out;
}

OneCoordinateFactor one_coordinate_factor(const ParameterSet& p, const Complex& new_value, const PrecisionContext& ctx) {
  return one_coordinate_factor(p.x, new_value, p.s - 1, p.t, p.n, ctx);
}

std::vector<std::vector<Complex>> interpolating_chain(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  if (x.size() != y.size()) throw DomainError("x and y must have the same length");
  std::vector<std::vector<Complex>> chain;
  for (std::size_t i = 0; i <= x.size(); ++i) {
    std::vector<Complex> w(y);
    std::copy_n(x.begin(), i, w.begin());
    chain.push_back(std::move(w));
  }
  return chain;
}

TransitionDetCheck transition_det_check(const std::vector<Complex>& x, const std::vector<Complex>& y, const Complex& t,
                                        int n, const PrecisionContext& ctx) {
  TransitionDetCheck out;
  TransitionMatrix e = transition_matrix(x, y, t, n, ctx);
  LuDecomposition lu(e.entries);
  out.numeric = lu.determinant();
  out.condition = lu.condition_estimate();
  out.closed = transition_det_closed(x, y, t, n, ctx, DeterminantForm::ESymbol);
  out.closed_theta = transition_det_closed(x, y, t, n, ctx, DeterminantForm::Theta);

  // E(x; y) = E(w^s; w^{s-1}) ... E(w^1; w^0); the factor E(w^l; w^{l-1})
  // moves coordinate l from x_l to y_l.
  auto chain = interpolating_chain(x, y);
  out.chain_product = ctx.one();
  for (std::size_t l = 1; l < chain.size(); ++l) {
    if (x[l - 1] == y[l - 1]) continue;
    out.chain_product *= one_coordinate_det_closed(chain[l], y[l - 1], static_cast<int>(l - 1), t, n, ctx);
  }
  out.residual = relative_difference(out.numeric, out.closed);
  out.form_residual = relative_difference(out.closed, out.closed_theta);
  out.chain_residual = relative_difference(out.closed, out.chain_product);
  return out;
}

double transition_det_residual(const ParameterSet& p, const std::vector<Complex>& y, const PrecisionContext& ctx) {
  auto check = transition_det_check(p.x, y, p.t, p.n, ctx);
  return std::max({check.residual, check.form_residual, check.chain_residual});
}

}  // namespace qlag
