#include "doctest.h"

#include "qlag/errors.hpp"
#include "qlag/qnum.hpp"
#include "support.hpp"

#include <random>

using namespace qlag;
using qlag::testing::random_in_annulus;

namespace {

// Independent oracle: plain truncated product, no tail control.
Complex product_oracle(const Complex& u, const Complex& q, int terms, mpfr_prec_t p) {
  Complex acc(1L, p);
  Complex power = u;
  power.round_to(p);
  for (int l = 0; l < terms; ++l) {
    acc *= Complex(1L, p) - power;
    power *= q;
  }
  return acc;
}

// (q;q)_inf and theta(-1) at q = 1/2, frozen from an independent 90-digit evaluation.
constexpr const char* kQPochHalf =
    "0.2887880950866024212788997219292307800889119048406857841147410661849022409068470125702";
constexpr const char* kThetaMinusOneHalf =
    "11.36911519959198743460764249532052714316266798860653948727730531436230805215528467733";

}  // namespace

TEST_CASE("qpoch_inf trivial values") {
  auto ctx = PrecisionContext::with_real_q(256, "0.37");
  CHECK(qpoch_inf(ctx.zero(), ctx) == ctx.one());
  CHECK(qpoch_inf(ctx.one(), ctx).is_zero());
}

TEST_CASE("qpoch_inf against the direct product oracle at q = 1/2") {
  auto ctx = PrecisionContext::with_real_q(256, "0.5");
  Complex value = qpoch_inf(ctx.q(), ctx);
  // 600 factors at 512 bits: truncation 2^-600, far below the 256-bit target.
  Complex oracle = product_oracle(ctx.q(), ctx.q(), 600, 512);
  CHECK(relative_difference(value, oracle) < 1e-75);
  CHECK(relative_difference(value, Complex::parse(kQPochHalf, 512)) < 1e-75);
}

TEST_CASE("qpoch finite values") {
  auto ctx = PrecisionContext::with_real_q(256, "0.4");
  Complex u(0.3, 0.8, ctx.prec());
  CHECK(qpoch(u, 0, ctx) == ctx.one());
  CHECK(relative_difference(qpoch(u, 1, ctx), one_minus(u)) < 1e-75);
  CHECK(relative_difference(qpoch(u, -1, ctx), inverse(one_minus(u / ctx.q()))) < 1e-75);
  // pole of (u)_{-2} at u = q^2
  CHECK_THROWS_AS(qpoch(ctx.q() * ctx.q(), -2, ctx), PoleError);
}

TEST_CASE("finite and infinite products agree") {
  auto ctx = PrecisionContext::with_real_q(256, "0.55");
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Complex u = random_in_annulus(rng, ctx, -1.5, 1.5);
    long nu = static_cast<long>(trial) - 10;
    Complex lhs = qpoch(u, nu, ctx) * qpoch_inf(u * ctx.q_pow(nu), ctx);
    CHECK(relative_difference(lhs, qpoch_inf(u, ctx)) < 1e-70);
  }
}

TEST_CASE("theta values and relations") {
  auto ctx = PrecisionContext::with_real_q(256, "0.5");
  CHECK(theta(ctx.one(), ctx).is_zero());
  CHECK_THROWS_AS(theta(ctx.zero(), ctx), ZeroArgument);

  Complex m1 = -ctx.one();
  Complex oracle = product_oracle(m1, ctx.q(), 600, 512) * product_oracle(-ctx.q(), ctx.q(), 600, 512);
  CHECK(relative_difference(theta(m1, ctx), oracle) < 1e-74);
  CHECK(relative_difference(theta(m1, ctx), Complex::parse(kThetaMinusOneHalf, 512)) < 1e-74);

  auto cq = PrecisionContext(256, Complex(0.3, 0.25, 256));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    // include arguments far outside the fundamental annulus
    Complex u = random_in_annulus(rng, cq, -6.0, 7.0);
    Complex tu = theta(u, cq);
    CHECK(relative_difference(theta(cq.q() * u, cq) * u, -tu) < 1e-68);
    CHECK(relative_difference(theta(cq.q() / u, cq), tu) < 1e-68);
  }
}

TEST_CASE("e symbol relations") {
  auto ctx = PrecisionContext::with_real_q(256, "0.35");
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Complex a = random_in_annulus(rng, ctx, -1.0, 1.0);
    Complex b = random_in_annulus(rng, ctx, -1.0, 1.0);
    Complex eab = e_symbol(a, b, ctx);
    CHECK(relative_difference(e_symbol(b, a, ctx), -eab) < 1e-70);
    CHECK(relative_difference(e_symbol(inverse(a), b, ctx), eab) < 1e-70);
    Complex qa = ctx.q() * a;
    CHECK(relative_difference(e_symbol(qa, b, ctx) * ctx.q() * a * a, eab) < 1e-70);
  }
  Complex a(0.7, 0.2, ctx.prec());
  CHECK(e_symbol(a, a, ctx).abs_approx() < 1e-70);
  CHECK_THROWS_AS(e_symbol(ctx.zero(), a, ctx), ZeroArgument);
}

TEST_CASE("e factorial") {
  auto ctx = PrecisionContext::with_real_q(256, "0.35");
  Complex a(0.7, 0.2, ctx.prec()), b(-0.4, 0.9, ctx.prec()), t(0.8, 0.1, ctx.prec());
  CHECK(e_factorial(a, b, t, 0, ctx) == ctx.one());
  CHECK(relative_difference(e_factorial(a, b, t, 1, ctx), e_symbol(a, b, ctx)) < 1e-75);
  Complex two = e_symbol(a, b, ctx) * e_symbol(a * t, b, ctx);
  CHECK(relative_difference(e_factorial(a, b, t, 2, ctx), two) < 1e-75);
}

TEST_CASE("doubling precision shrinks relation residuals") {
  std::mt19937_64 rng(17);
  auto lo = PrecisionContext::with_real_q(128, "0.3");
  auto hi = PrecisionContext::with_real_q(256, "0.3");
  for (int trial = 0; trial < 5; ++trial) {
    Complex u_hi = random_in_annulus(rng, hi, -0.5, 0.5);
    Complex u_lo = u_hi;
    u_lo.round_to(128);
    auto residual = [](const Complex& u, const PrecisionContext& c) {
      return relative_difference(theta(c.q() / u, c), theta(u, c)) +
             relative_difference(theta(c.q() * u, c) * u, -theta(u, c));
    };
    double r_lo = residual(u_lo, lo);
    double r_hi = residual(u_hi, hi);
    // at least 2^64 improvement, unless the high-precision residual is exactly 0
    CHECK((r_hi == 0.0 || r_hi * std::ldexp(1.0, 64) <= r_lo || r_lo == 0.0));
    CHECK(r_hi < 1e-70);
  }
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PrecisionContext::with_real_q(256, "1.0"), DomainError);
  CHECK_THROWS_AS(PrecisionContext::with_real_q(256, "0"), DomainError);
  auto ctx = PrecisionContext::with_real_q(256, "0.3");
  CHECK(ctx.eps_product() < ctx.eps_identity());
  CHECK(relative_difference(ctx.sqrt_q() * ctx.sqrt_q(), ctx.q()) < 1e-75);
  auto wider = ctx.with_bits(512);
  CHECK(wider.bits() == 512);
}
