#pragma once

#include "qlag/complex.hpp"
#include "qlag/indexsets.hpp"
#include "qlag/precision.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qlag::harness {

/// Random stream keyed by (seed, sample index, attempt). The same key always
/// yields the same stream, independent of evaluation order.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0);

  double uniform(double lo, double hi);
  int integer(int lo, int hi);
  /// Modulus |q|^e with e uniform in [lo, hi] and a uniform phase.
  Complex annulus(const PrecisionContext& ctx, double lo, double hi);
  std::vector<Complex> annulus_list(const PrecisionContext& ctx, int count, double lo, double hi);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Base q for the series and interpolation identities.
PrecisionContext sample_context(SampleRng& rng, long bits);
/// Base q for lattice sums, which need faster shell decay.
PrecisionContext sample_lattice_context(SampleRng& rng, long bits);

/// x and t for interpolation identities: |x_i| in |q|^{0.5}..|q|^{-0.5}, |t| in |q|^{0.3}..|q|^{0.1}.
ParameterSet sample_interp_parameters(SampleRng& rng, const PrecisionContext& ctx, int s, int n);
std::vector<Complex> sample_interp_point(SampleRng& rng, const PrecisionContext& ctx, int count);

/// Full weight data for lattice sums: |a_m| in |q|^{-0.45}..|q|^{-0.15},
/// |t| in |q|^{0.2}..|q|^{0.02}, |x_i| in |q|^{0.25}..|q|^{0.05}.
ParameterSet sample_jackson_parameters(SampleRng& rng, const PrecisionContext& ctx, int s, int n);
/// |z_i| in |q|^{0.25}..|q|^{0.05}.
std::vector<Complex> sample_jackson_point(SampleRng& rng, const PrecisionContext& ctx, int n);

}  // namespace qlag::harness
