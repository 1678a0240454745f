// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "harness/check.hpp"
#include "harness/sampling.hpp"

#include "qlag/bcjackson.hpp"
#include "qlag/errors.hpp"
#include "qlag/matrix.hpp"
#include "qlag/transition.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qlag;
using namespace qlag::harness;

struct Shape {
  int s;
  int n;
};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  double worst = 0.0;

  void fail(const std::string& why) {
    pass = false;
    detail << " [" << why << "]";
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string shape_label(const CheckConfig& cfg) {
  return std::string(identity_name(cfg.identity)) + "(" + std::to_string(cfg.s) + "," + std::to_string(cfg.n) + ")";
}

// Runs one harness check; every sample must PASS and stay below `floor` unless
// the harness threshold already includes a shell-error term.
void require(Outcome& out, CheckConfig cfg, double floor, bool floor_is_hard) {
  cfg.tolerance = floor;
  auto report = run_check(cfg);
  for (const auto& rec : report.samples) {
    if (rec.status != SampleStatus::Pass) {
      out.fail(shape_label(cfg) + " sample " + std::to_string(rec.index) + " " +
               std::string(status_name(rec.status)) + (rec.message.empty() ? "" : ": " + rec.message));
    }
    for (const auto& c : rec.components) {
      if (!c.pass()) {
        out.fail(shape_label(cfg) + " " + c.name + " " + sci(c.residual) + " >= " + sci(c.threshold));
      }
    }
    if (floor_is_hard && !(rec.residual < floor)) out.fail(shape_label(cfg) + " residual " + sci(rec.residual));
  }
  out.worst = std::max(out.worst, report.max_residual);
}

CheckConfig config(Identity id, int s, int n, int samples, std::uint64_t seed) {
  CheckConfig cfg;
  cfg.identity = id;
  cfg.s = s;
  cfg.n = n;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.bits = 256;
  return cfg;
}

const std::vector<Shape> kInterpShapes = {{2, 1}, {2, 2}, {2, 3}, {3, 2}, {4, 2}};

Outcome bailey() {
  Outcome out;
  require(out, config(Identity::Bailey, 2, 1, 50, 101), 1e-25, true);
  return out;
}

Outcome slater() {
  Outcome out;
  for (int r : {3, 4, 5}) {
    auto cfg = config(Identity::Slater, 2, 1, 20, 200 + static_cast<std::uint64_t>(r));
    cfg.r = r;
    require(out, cfg, 1e-20, true);
  }
  return out;
}

Outcome delta() {
  Outcome out;
  for (auto [s, n] : kInterpShapes) require(out, config(Identity::Delta, s, n, 1, 301), 1e-28, true);
  return out;
}

Outcome method_agreement() {
  Outcome out;
  for (auto [s, n] : kInterpShapes) require(out, config(Identity::MethodAgreement, s, n, 30, 401), 1e-25, true);
  return out;
}

Outcome duality() {
  Outcome out;
  for (Shape sh : std::vector<Shape>{{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}}) {
    require(out, config(Identity::Duality, sh.s, sh.n, 30, 501), 1e-25, true);
  }
  return out;
}

Outcome quasi_periodicity() {
  Outcome out;
  for (Shape sh : std::vector<Shape>{{2, 1}, {2, 2}, {3, 2}}) {
    require(out, config(Identity::QuasiPeriodicity, sh.s, sh.n, 10, 601), 1e-25, true);
  }
  // Lattice sums carry their own 20x shell-error bounds per component.
  for (Shape sh : std::vector<Shape>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    require(out, config(Identity::LatticeInvariance, sh.s, sh.n, 3, 602), 1e-20, false);
  }
  return out;
}

Outcome transition_det() {
  Outcome out;
  for (Shape sh : std::vector<Shape>{{2, 2}, {2, 3}, {3, 2}}) {
    require(out, config(Identity::TransitionDet, sh.s, sh.n, 20, 701), 1e-20, true);
  }
  return out;
}

Outcome one_coordinate() {
  Outcome out;
  for (Shape sh : std::vector<Shape>{{2, 2}, {2, 3}, {3, 2}}) {
    require(out, config(Identity::OneCoordinate, sh.s, sh.n, 20, 801), 1e-25, true);
  }
  return out;
}

Outcome vandiejen() {
  Outcome out;
  const int samples[] = {5, 5, 3};
  const int radius[] = {40, 40, 25};
  for (int n = 1; n <= 3; ++n) {
    auto cfg = config(Identity::Vandiejen, 1, n, samples[n - 1], 901);
    cfg.radius = radius[n - 1];
    require(out, cfg, 1e-15, false);
  }
  return out;
}

Outcome wronskian() {
  Outcome out;
  for (Shape sh : std::vector<Shape>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    require(out, config(Identity::Wronskian, sh.s, sh.n, 3, 1001), 1e-10, false);
  }
  return out;
}

Outcome connection() {
  Outcome out;
  for (Shape sh : std::vector<Shape>{{2, 1}, {2, 2}, {3, 1}}) {
    require(out, config(Identity::Connection, sh.s, sh.n, 5, 1101), 1e-10, false);
  }
  return out;
}

double propagated(const WronskianMatrix& w) {
  LuDecomposition lu(w.entries);
  double cond = lu.condition_estimate();
  if (!std::isfinite(cond)) cond = 1e300;
  return w.shell_error * std::max(1.0, cond) * static_cast<double>(w.entries.rows());
}

Outcome wronskian_ratio() {
  Outcome out;
  constexpr double kFloor = 1e-20;
  for (int n : {1, 2}) {
    for (std::uint64_t index = 0; index < 3; ++index) {
      bool done = false;
      for (std::uint64_t attempt = 0; attempt < 4 && !done; ++attempt) {
        SampleRng rng(1201, index + 10 * static_cast<std::uint64_t>(n), attempt);
        auto ctx = sample_lattice_context(rng, 256);
        auto p = sample_jackson_parameters(rng, ctx, 2, n);
        auto other = p;
        other.x = sample_jackson_point(rng, ctx, 2);
        auto trunc = LatticeTruncation::defaults_for(n);
        try {
          auto wx = wronskian_matrix(p, trunc, ctx);
          auto wy = wronskian_matrix(other, trunc, ctx);
          Complex ratio = determinant(wy.entries) / determinant(wx.entries);
          double residual = relative_difference(ratio, transition_det_closed(p.x, other.x, p.t, n, ctx));
          double bound = std::max(kFloor, 20.0 * (propagated(wx) + propagated(wy)));
          out.worst = std::max(out.worst, residual);
          if (!(residual < bound)) {
            out.fail("n=" + std::to_string(n) + " residual " + sci(residual) + " >= " + sci(bound));
          }
          done = true;
        } catch (const Unconverged&) {
        }
      }
      if (!done) out.fail("n=" + std::to_string(n) + " sample " + std::to_string(index) + " never converged");
    }
  }
  return out;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

Outcome determinism() {
  Outcome out;
  std::vector<CheckConfig> configs = {config(Identity::Bailey, 2, 1, 6, 1301), config(Identity::Delta, 3, 2, 3, 1302),
                                      config(Identity::Vandiejen, 1, 2, 3, 1303),
                                      config(Identity::Connection, 2, 1, 3, 1304)};
  for (auto cfg : configs) {
    cfg.threads = 1;
    auto first = run_check(cfg);
    cfg.threads = 3;
    auto second = run_check(cfg);
    for (std::size_t i = 0; i < first.samples.size(); ++i) {
      const auto& a = first.samples[i];
      const auto& b = second.samples[i];
      bool equal = a.parameters == b.parameters && a.components.size() == b.components.size() &&
                   same_bits(a.residual, b.residual) && same_bits(a.shell_error, b.shell_error);
      for (std::size_t c = 0; equal && c < a.components.size(); ++c) {
        equal = same_bits(a.components[c].residual, b.components[c].residual);
      }
      if (!equal) out.fail(shape_label(cfg) + " sample " + std::to_string(i) + " differs between runs");
    }
  }
  return out;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
  double time_limit_seconds;  // 0 means untimed
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"Bailey 6psi6 sum, 50 samples, residual < 1e-25", bailey, 10},
      {"Slater 2r psi 2r, r = 3,4,5, 20 samples each, residual < 1e-20", slater, 60},
      {"Delta property, exhaustive over five shapes, < 1e-28", delta, 30},
      {"Three interpolation methods agree, 30 samples per shape, < 1e-25", method_agreement, 0},
      {"Duality, 30 samples per shape up to (3,3), < 1e-25", duality, 0},
      {"Quasi-periodicity and Weyl invariance, interp < 1e-25 and lattice < 20x shell error", quasi_periodicity, 0},
      {"Transition determinant, 20 samples per shape, < 1e-20 (theta form < 1e-30)", transition_det, 0},
      {"One-coordinate triangularity < 1e-28 and diagonal < 1e-25", one_coordinate, 0},
      {"van Diejen sum, n = 1,2,3, < max(1e-15, 20x shell error)", vandiejen, 180},
      {"Wronskian determinant, four shapes, < max(1e-10, 20x shell error)", wronskian, 300},
      {"Connection formula with phi = 1 and Schur characters, Slater match at (2,1)", connection, 0},
      {"Wronskian ratio equals the transition determinant, s = 2, n <= 2", wronskian_ratio, 0},
      {"Same seed gives bit-identical residuals", determinism, 0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_seconds > 0 && seconds >= c.time_limit_seconds) {
      out.fail("took " + sci(seconds) + " s, limit " + sci(c.time_limit_seconds) + " s");
    }
    if (!out.pass) ++failures;
    std::printf("[%s] %2zu. %s  (max residual %s, %.1f s)%s\n", out.pass ? "PASS" : "FAIL", i + 1, c.title,
                sci(out.worst).c_str(), seconds, out.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
