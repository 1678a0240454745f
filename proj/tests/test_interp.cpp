#include "doctest.h"

#include "qlag/errors.hpp"
#include "qlag/interp.hpp"
#include "qlag/qnum.hpp"
#include "support.hpp"

#include <random>

using namespace qlag;
using namespace qlag::testing;

namespace {

const PrecisionContext& context() {
  static const PrecisionContext ctx = PrecisionContext::with_real_q(256, "0.3");
  return ctx;
}

LagrangeBasis random_basis(std::mt19937_64& rng, int s, int n) {
  const auto& ctx = context();
  return LagrangeBasis(random_points(rng, ctx, s), random_t(rng, ctx), n, ctx);
}

double check_delta(const LagrangeBasis& b, InterpMethod m) {
  double worst = 0.0;
  for (std::size_t mu = 0; mu < b.indices().size(); ++mu) {
    auto values = b.evaluate_all(b.point(b.indices()[mu]), m);
    for (std::size_t lam = 0; lam < values.size(); ++lam) {
      Complex target = lam == mu ? context().one() : context().zero();
      worst = std::max(worst, (values[lam] - target).abs_approx());
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("kernel Psi") {
  const auto& ctx = context();
  std::mt19937_64 rng(1);
  auto z = random_points(rng, ctx, 3);
  auto y = random_points(rng, ctx, 2);
  CHECK(kernel_psi({z[0]}, {y[0]}, ctx) == e_symbol(z[0], y[0], ctx));
  Complex whole = kernel_psi(z, y, ctx);
  Complex split = kernel_psi({z[0]}, y, ctx) * kernel_psi({z[1], z[2]}, y, ctx);
  CHECK(relative_difference(whole, split) < 1e-70);
  auto zi = z;
  zi[1] = inverse(zi[1]);
  CHECK(relative_difference(kernel_psi(zi, y, ctx), whole) < 1e-70);
}

TEST_CASE("dual functions F") {
  const auto& ctx = context();
  std::mt19937_64 rng(2);
  LagrangeBasis b = random_basis(rng, 3, 3);
  auto y = random_points(rng, ctx, 2);
  for (const auto& mu : b.indices()) {
    CHECK(relative_difference(f_dual(b.x(), b.t(), mu, y, ctx), kernel_psi(b.point(mu), y, ctx)) < 1e-70);
  }
  // multiplicativity F_mu(x; y) F_nu(x t^mu; y) = F_{mu+nu}(x; y)
  MultiIndex mu{{1, 0, 1}, IndexKind::Z}, nu{{0, 1, 0}, IndexKind::Z}, sum{{1, 1, 1}, IndexKind::Z};
  auto shifted = shift_x(b.x(), b.t(), mu);
  Complex lhs = f_dual(b.x(), b.t(), mu, y, ctx) * f_dual(shifted, b.t(), nu, y, ctx);
  CHECK(relative_difference(lhs, f_dual(b.x(), b.t(), sum, y, ctx)) < 1e-70);
  // vanishing unless mu_j <= nu_j for j < s
  for (const auto& m : b.indices()) {
    for (const auto& n : b.indices()) {
      bool forbidden = m[0] > n[0] || m[1] > n[1];
      Complex v = f_dual(b.x(), b.t(), m, b.eta(n), ctx);
      if (forbidden) {
        CHECK(v.abs_approx() < 1e-60);
      } else {
        CHECK(v.abs_approx() > 1e-40);
      }
    }
  }
}

TEST_CASE("F is upper triangular and G inverts it") {
  std::mt19937_64 rng(3);
  for (auto [s, n] : {std::pair{2, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    LagrangeBasis b = random_basis(rng, s, n);
    const ComplexMatrix& f = b.f();
    const ComplexMatrix& g = b.g();
    const std::size_t dim = f.rows();
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(f(i, j).abs_approx() < 1e-60 * f.row_norm(i));
        CHECK(g(i, j).is_zero());
      }
    }
    CHECK(relative_difference(determinant(f), f.diagonal_product()) < 1e-60);
    auto id = ComplexMatrix::identity(dim, f.precision());
    CHECK(max_abs_difference(f * g, id) < 1e-60);
    auto neumann = neumann_inverse(f);
    CHECK(max_abs_difference(neumann, g) < 1e-60 * g.norm_inf());
  }
  LagrangeBasis big = random_basis(rng, 3, 4);  // |Z| = 15
  CHECK_THROWS_AS(neumann_inverse(big.f()), DomainError);
}

TEST_CASE("delta property for every method") {
  std::mt19937_64 rng(4);
  for (auto [s, n] : {std::pair{1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}, {4, 2}}) {
    LagrangeBasis b = random_basis(rng, s, n);
    for (auto m : {InterpMethod::Explicit, InterpMethod::Recursive, InterpMethod::Triangular}) {
      INFO("s=" << s << " n=" << n << " method " << method_name(m));
      CHECK(check_delta(b, m) < 1e-60);
    }
  }
}

TEST_CASE("closed forms for n = 1 and lambda = n eps_i") {
  const auto& ctx = context();
  std::mt19937_64 rng(5);
  LagrangeBasis one = random_basis(rng, 3, 1);
  Complex z = random_in_annulus(rng, ctx, -0.5, 0.5);
  for (int i = 0; i < 3; ++i) {
    const auto& x = one.x();
    Complex expected = ctx.one();
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      const Complex& xi = x[static_cast<std::size_t>(i)];
      const Complex& xj = x[static_cast<std::size_t>(j)];
      expected *= theta(xj * z, ctx) * theta(xj / z, ctx) / (theta(xi * xj, ctx) * theta(xj / xi, ctx));
    }
    MultiIndex eps{{0, 0, 0}, IndexKind::Z};
    eps.entries[static_cast<std::size_t>(i)] = 1;
    CHECK(relative_difference(one.evaluate(eps, {z}), expected) < 1e-70);
  }

  LagrangeBasis b = random_basis(rng, 3, 3);
  auto zs = random_points(rng, ctx, 3);
  for (int i = 0; i < 3; ++i) {
    MultiIndex lam{{0, 0, 0}, IndexKind::Z};
    lam.entries[static_cast<std::size_t>(i)] = 3;
    Complex expected = ctx.one();
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      const Complex& xj = b.x()[static_cast<std::size_t>(j)];
      for (const auto& zk : zs) expected *= e_symbol(zk, xj, ctx);
      expected /= e_factorial(b.x()[static_cast<std::size_t>(i)], xj, b.t(), 3, ctx);
    }
    CHECK(relative_difference(b.evaluate(lam, zs), expected) < 1e-70);
  }
}

TEST_CASE("methods agree at random points") {
  const auto& ctx = context();
  std::mt19937_64 rng(6);
  for (auto [s, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
    LagrangeBasis b = random_basis(rng, s, n);
    for (int trial = 0; trial < 3; ++trial) {
      auto z = random_points(rng, ctx, n, -1.0, 1.0);
      auto e = b.evaluate_all(z, InterpMethod::Explicit);
      auto r = b.evaluate_all(z, InterpMethod::Recursive);
      auto t = b.evaluate_all(z, InterpMethod::Triangular);
      for (std::size_t k = 0; k < e.size(); ++k) {
        CHECK(relative_difference(e[k], r[k]) < 1e-60);
        CHECK(relative_difference(e[k], t[k]) < 1e-50);
        CHECK(e[k] == b.evaluate(b.indices()[k], z));
      }
    }
  }
}

TEST_CASE("quasi-periodicity and W_n invariance") {
  const auto& ctx = context();
  std::mt19937_64 rng(7);
  LagrangeBasis b = random_basis(rng, 3, 2);
  auto z = random_points(rng, ctx, 2);
  auto base = b.evaluate_all(z);
  for (int i = 0; i < 2; ++i) {
    auto shifted = z;
    shifted[static_cast<std::size_t>(i)] *= ctx.q();
    auto vals = b.evaluate_all(shifted);
    const Complex& zi = z[static_cast<std::size_t>(i)];
    Complex factor = pow(ctx.q() * zi * zi, 2);  // (q z_i^2)^{s-1}
    for (std::size_t k = 0; k < base.size(); ++k) CHECK(relative_difference(vals[k] * factor, base[k]) < 1e-65);
  }
  auto swapped = std::vector<Complex>{z[1], z[0]};
  auto inverted = std::vector<Complex>{inverse(z[0]), z[1]};
  auto vs = b.evaluate_all(swapped);
  auto vi = b.evaluate_all(inverted);
  for (std::size_t k = 0; k < base.size(); ++k) {
    CHECK(relative_difference(vs[k], base[k]) < 1e-65);
    CHECK(relative_difference(vi[k], base[k]) < 1e-65);
  }
}

TEST_CASE("split recursion with general m + l") {
  const auto& ctx = context();
  std::mt19937_64 rng(8);
  LagrangeBasis b = random_basis(rng, 3, 3);
  auto z = random_points(rng, ctx, 3);
  std::vector<Complex> z1{z[0], z[1]}, z2{z[2]};
  LagrangeBasis left(b.x(), b.t(), 2, ctx);
  for (const auto& lambda : b.indices()) {
    Complex sum = ctx.zero();
    for (const auto& mu : left.indices()) {
      MultiIndex nu{{lambda[0] - mu[0], lambda[1] - mu[1], lambda[2] - mu[2]}, IndexKind::Z};
      if (nu[0] < 0 || nu[1] < 0 || nu[2] < 0) continue;
      LagrangeBasis right(shift_x(b.x(), b.t(), mu), b.t(), 1, ctx);
      sum += left.evaluate(mu, z1) * right.evaluate(nu, z2);
    }
    CHECK(relative_difference(sum, b.evaluate(lambda, z)) < 1e-65);
  }
}

TEST_CASE("duality") {
  const auto& ctx = context();
  std::mt19937_64 rng(9);
  LagrangeBasis b21 = random_basis(rng, 2, 1);
  CHECK(duality_residual(random_points(rng, ctx, 1), random_points(rng, ctx, 1), b21, ctx) < 1e-30);
  LagrangeBasis b32 = random_basis(rng, 3, 2);
  CHECK(duality_residual(random_points(rng, ctx, 2), random_points(rng, ctx, 2), b32, ctx) < 1e-25);
  // at z = x_mu only the mu term survives: Psi(x_mu; y) = F_mu(x; y)
  auto y = random_points(rng, ctx, 2);
  const auto& mu = b32.indices()[2];
  CHECK(relative_difference(kernel_psi(b32.point(mu), y, ctx), f_dual(b32.x(), b32.t(), mu, y, ctx)) < 1e-70);
  CHECK(duality_residual(b32.point(mu), y, b32, ctx) < 1e-60);
}

TEST_CASE("non-generic x is rejected") {
  const auto& ctx = context();
  std::mt19937_64 rng(10);
  auto x = random_points(rng, ctx, 2);
  x[1] = x[0];
  CHECK_THROWS_AS(LagrangeBasis(x, random_t(rng, ctx), 2, ctx), NonGenericError);
  Complex t = random_t(rng, ctx);
  x = random_points(rng, ctx, 2);
  x[1] = inverse(x[0] * t);  // x_1 x_2 t = 1
  CHECK_THROWS_AS(LagrangeBasis(x, t, 2, ctx), NonGenericError);
}
