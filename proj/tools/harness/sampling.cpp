#include "sampling.hpp"

#include <cmath>
#include <numbers>

namespace qlag::harness {

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffU); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed), hi(seed), lo(index), hi(index), lo(attempt), hi(attempt)};
  engine_.seed(seq);
}

double SampleRng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

int SampleRng::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

Complex SampleRng::annulus(const PrecisionContext& ctx, double lo, double hi) {
  double modulus = std::pow(ctx.abs_q(), uniform(lo, hi));
  double phase = uniform(-std::numbers::pi, std::numbers::pi);
  return Complex::polar(Real(modulus, ctx.prec()), Real(phase, ctx.prec()));
}

std::vector<Complex> SampleRng::annulus_list(const PrecisionContext& ctx, int count, double lo, double hi) {
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) out.push_back(annulus(ctx, lo, hi));
  return out;
}

PrecisionContext sample_context(SampleRng& rng, long bits) {
  return PrecisionContext(bits, Complex(rng.uniform(0.2, 0.6), 0.0, static_cast<mpfr_prec_t>(bits)));
}

PrecisionContext sample_lattice_context(SampleRng& rng, long bits) {
  return PrecisionContext(bits, Complex(rng.uniform(0.1, 0.3), 0.0, static_cast<mpfr_prec_t>(bits)));
}

ParameterSet sample_interp_parameters(SampleRng& rng, const PrecisionContext& ctx, int s, int n) {
  ParameterSet p;
  p.s = s;
  p.n = n;
  p.t = rng.annulus(ctx, 0.1, 0.3);
  p.x = rng.annulus_list(ctx, s, -0.5, 0.5);
  return p;
}

std::vector<Complex> sample_interp_point(SampleRng& rng, const PrecisionContext& ctx, int count) {
  return rng.annulus_list(ctx, count, -0.5, 0.5);
}

ParameterSet sample_jackson_parameters(SampleRng& rng, const PrecisionContext& ctx, int s, int n) {
  ParameterSet p;
  p.s = s;
  p.n = n;
  p.t = rng.annulus(ctx, 0.02, 0.2);
  p.a = rng.annulus_list(ctx, 2 * s + 2, -0.45, -0.15);
  p.x = rng.annulus_list(ctx, s, 0.05, 0.25);
  return p;
}

std::vector<Complex> sample_jackson_point(SampleRng& rng, const PrecisionContext& ctx, int n) {
  return rng.annulus_list(ctx, n, 0.05, 0.25);
}

}  // namespace qlag::harness
