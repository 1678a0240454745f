#include "check.hpp"

#include "json_util.hpp"
#include "sampling.hpp"

#include "qlag/bcjackson.hpp"
#include "qlag/errors.hpp"
#include "qlag/interp.hpp"
#include "qlag/qseries.hpp"
#include "qlag/transition.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <thread>

namespace qlag::harness {

namespace {

constexpr int kMaxAttempts = 4;

struct Outcome {
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<Component> components;
  double shell_error = 0.0;
  long terms = 0;
};

using Runner = std::function<Outcome(const CheckConfig&, SampleRng&)>;

double tolerance_of(const CheckConfig& cfg) { return cfg.tolerance.value_or(default_tolerance(cfg.identity)); }

LatticeTruncation lattice_truncation(const CheckConfig& cfg, double shell_stop) {
  auto trunc = LatticeTruncation::defaults_for(cfg.n);
  if (cfg.radius) trunc.radius = *cfg.radius;
  trunc.shell_stop = std::min(trunc.shell_stop, shell_stop);
  return trunc;
}

nlohmann::json interp_json(const PrecisionContext& ctx, const ParameterSet& p) {
  return {{"q", complex_json(ctx.q())}, {"t", complex_json(p.t)}, {"x", complex_list_json(p.x)}};
}

nlohmann::json jackson_json(const PrecisionContext& ctx, const ParameterSet& p, const std::vector<Complex>& z) {
  auto j = interp_json(ctx, p);
  j["a"] = complex_list_json(p.a);
  j["z"] = complex_list_json(z);
  return j;
}

MultiIndex random_index(SampleRng& rng, const std::vector<MultiIndex>& indices) {
  return indices[static_cast<std::size_t>(rng.integer(0, static_cast<int>(indices.size()) - 1))];
}

Outcome run_bailey(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  for (;;) {
    Complex a = rng.annulus(ctx, -0.9, 0.9);
    auto bcde = rng.annulus_list(ctx, 4, -0.9, 0.4);
    Complex x = a * a * ctx.q() / (bcde[0] * bcde[1] * bcde[2] * bcde[3]);
    if (x.abs_approx() >= 0.7) continue;
    Outcome out;
    out.parameters = {{"q", complex_json(ctx.q())}, {"a", complex_json(a)}, {"bcde", complex_list_json(bcde)}};
    out.components.push_back(
        {"bailey", bailey_residual(a, bcde[0], bcde[1], bcde[2], bcde[3], ctx), tolerance_of(cfg)});
    return out;
  }
}

Outcome run_slater(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  const int r = cfg.r;
  for (;;) {
    Complex a = rng.annulus(ctx, -0.8, 0.8);
    auto aux = rng.annulus_list(ctx, r - 2, -0.8, 0.8);
    auto b = rng.annulus_list(ctx, 2 * r - 2, -0.9, 0.3);
    Complex bp = ctx.one();
    for (const auto& v : b) bp *= v;
    if ((pow(a, r - 1) * ctx.q_pow(r - 2) / bp).abs_approx() >= 0.7) continue;
    Outcome out;
    out.parameters = {{"q", complex_json(ctx.q())},
                      {"a", complex_json(a)},
                      {"aux", complex_list_json(aux)},
                      {"b", complex_list_json(b)}};
    out.components.push_back({"slater", slater_residual(r, a, aux, b, ctx), tolerance_of(cfg)});
    return out;
  }
}

Outcome run_duality(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  auto p = sample_interp_parameters(rng, ctx, cfg.s, cfg.n);
  LagrangeBasis basis(p, ctx);
  auto z = sample_interp_point(rng, ctx, cfg.n);
  auto y = sample_interp_point(rng, ctx, cfg.s - 1);
  Outcome out;
  out.parameters = interp_json(ctx, p);
  out.parameters["z"] = complex_list_json(z);
  out.parameters["y"] = complex_list_json(y);
  out.components.push_back({"duality", duality_residual(z, y, basis, ctx), tolerance_of(cfg)});
  return out;
}

const std::vector<InterpMethod>& methods_for(int s) {
  static const std::vector<InterpMethod> all = {InterpMethod::Explicit, InterpMethod::Recursive,
                                                InterpMethod::Triangular};
  static const std::vector<InterpMethod> direct = {InterpMethod::Explicit, InterpMethod::Recursive};
  return s >= 2 ? all : direct;
}

Outcome run_delta(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  auto p = sample_interp_parameters(rng, ctx, cfg.s, cfg.n);
  LagrangeBasis basis(p, ctx);
  const auto& idx = basis.indices();
  Outcome out;
  out.parameters = interp_json(ctx, p);
  for (auto method : methods_for(cfg.s)) {
    double off = 0.0;
    double diag = 0.0;
    for (std::size_t m = 0; m < idx.size(); ++m) {
      auto values = basis.evaluate_all(basis.point(idx[m]), method);
      for (std::size_t l = 0; l < idx.size(); ++l) {
        if (l == m) {
          diag = std::max(diag, (values[l] - ctx.one()).abs_approx());
        } else {
          off = std::max(off, values[l].abs_approx());
        }
      }
    }
    std::string name(method_name(method));
    out.components.push_back({name + " off-diagonal", off, tolerance_of(cfg)});
    out.components.push_back({name + " diagonal", diag, tolerance_of(cfg)});
  }
  return out;
}

Outcome run_method_agreement(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  auto p = sample_interp_parameters(rng, ctx, cfg.s, cfg.n);
  LagrangeBasis basis(p, ctx);
  auto lambda = random_index(rng, basis.indices());
  auto z = sample_interp_point(rng, ctx, cfg.n);
  Outcome out;
  out.parameters = interp_json(ctx, p);
  out.parameters["lambda"] = lambda.to_string();
  out.parameters["z"] = complex_list_json(z);
  std::vector<Complex> values;
  for (auto method : methods_for(cfg.s)) values.push_back(basis.evaluate(lambda, z, method));
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) worst = std::max(worst, relative_difference(values[i], values[j]));
  }
  out.components.push_back({"pairwise", worst, tolerance_of(cfg)});
  return out;
}

Outcome run_quasi_periodicity(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  auto p = sample_interp_parameters(rng, ctx, cfg.s, cfg.n);
  LagrangeBasis basis(p, ctx);
  auto lambda = random_index(rng, basis.indices());
  auto z = sample_interp_point(rng, ctx, cfg.n);
  Outcome out;
  out.parameters = interp_json(ctx, p);
  out.parameters["lambda"] = lambda.to_string();
  out.parameters["z"] = complex_list_json(z);
  Complex base = basis.evaluate(lambda, z);
  double qp = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    auto moved = z;
    moved[i] *= ctx.q();
    Complex factor = pow(ctx.q() * z[i] * z[i], cfg.s - 1);
    qp = std::max(qp, relative_difference(basis.evaluate(lambda, moved) * factor, base));
  }
  auto moved = z;
  std::shuffle(moved.begin(), moved.end(), rng.engine());
  for (auto& v : moved) {
    if (rng.integer(0, 1) == 1) v = inverse(v);
  }
  out.components.push_back({"quasi-periodicity", qp, tolerance_of(cfg)});
  out.components.push_back({"weyl-invariance", relative_difference(basis.evaluate(lambda, moved), base), tolerance_of(cfg)});
  return out;
}

Outcome run_transition_det(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  auto p = sample_interp_parameters(rng, ctx, cfg.s, cfg.n);
  auto y = sample_interp_point(rng, ctx, cfg.s);
  auto check = transition_det_check(p.x, y, p.t, cfg.n, ctx);
  Outcome out;
  out.parameters = interp_json(ctx, p);
  out.parameters["y"] = complex_list_json(y);
  out.components.push_back({"numeric-vs-closed", check.residual, tolerance_of(cfg)});
  out.components.push_back({"chain-product", check.chain_residual, tolerance_of(cfg)});
  out.components.push_back({"theta-vs-e-form", check.form_residual, 1e-30});
  return out;
}

Outcome run_one_coordinate(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_context(rng, cfg.bits);
  auto p = sample_interp_parameters(rng, ctx, cfg.s, cfg.n);
  Complex v = rng.annulus(ctx, -0.5, 0.5);
  int l = rng.integer(0, cfg.s - 1);
  auto f = one_coordinate_factor(p.x, v, l, p.t, cfg.n, ctx);
  Outcome out;
  out.parameters = interp_json(ctx, p);
  out.parameters["l"] = l;
  out.parameters["value"] = complex_json(v);
  out.components.push_back({"forbidden-entries", f.forbidden_entry_ratio, 1e-28});
  out.components.push_back({"diagonal", f.diagonal_residual, tolerance_of(cfg)});
  out.components.push_back(
      {"determinant", relative_difference(determinant(f.matrix.entries), f.closed_determinant), tolerance_of(cfg)});
  return out;
}

Outcome run_vandiejen(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_lattice_context(rng, cfg.bits);
  auto p = sample_jackson_parameters(rng, ctx, 1, cfg.n);
  auto z = sample_jackson_point(rng, ctx, cfg.n);
  const double tol = tolerance_of(cfg);
  auto trunc = lattice_truncation(cfg, tol * 1e-5);
  auto value = regularized_integral(*constant_integrand(), z, p, trunc, ctx);
  Complex rhs = vandiejen_product(p, ctx);
  Outcome out;
  out.parameters = jackson_json(ctx, p, z);
  out.shell_error = value.shell_error;
  out.terms = value.terms_used;
  IdentityResidual r{relative_difference(value.value(), rhs), value.shell_error};
  out.components.push_back({"vandiejen", r.residual, r.threshold(tol)});
  return out;
}

Outcome run_wronskian(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_lattice_context(rng, cfg.bits);
  auto p = sample_jackson_parameters(rng, ctx, cfg.s, cfg.n);
  const double tol = tolerance_of(cfg);
  auto trunc = lattice_truncation(cfg, tol * 1e-5);
  auto matrix = wronskian_matrix(p, trunc, ctx);
  LuDecomposition lu(matrix.entries);
  Complex closed = wronskian_closed(p, ctx);
  double condition = std::isfinite(lu.condition_estimate()) ? lu.condition_estimate() : 1.0 / ctx.eps_product();
  IdentityResidual r{relative_difference(lu.determinant(), closed),
                     matrix.shell_error * std::max(1.0, condition) * static_cast<double>(matrix.entries.rows())};
  Outcome out;
  out.parameters = jackson_json(ctx, p, {});
  out.parameters.erase("z");
  out.shell_error = r.shell_error;
  out.terms = matrix.terms_used;
  out.components.push_back({"wronskian", r.residual, r.threshold(tol)});
  return out;
}

Outcome run_connection(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_lattice_context(rng, cfg.bits);
  auto p = sample_jackson_parameters(rng, ctx, cfg.s, cfg.n);
  auto z = sample_jackson_point(rng, ctx, cfg.n);
  const double tol = tolerance_of(cfg);
  auto trunc = lattice_truncation(cfg, tol * 1e-5);
  Outcome out;
  out.parameters = jackson_json(ctx, p, z);
  for (auto kind : {ConnectionIntegrand::One, ConnectionIntegrand::Schur}) {
    auto c = connection_check(kind, z, p, trunc, ctx);
    out.shell_error = std::max(out.shell_error, c.residual.shell_error);
    out.components.push_back(
        {kind == ConnectionIntegrand::One ? "phi=1" : "phi=schur", c.residual.residual, c.residual.threshold(tol)});
  }
  if (cfg.s == 2 && cfg.n == 1) {
    auto m = slater_match(z[0], p, trunc, ctx);
    double combined = std::max(tol, 20.0 * m.shell_error);
    out.components.push_back({"slater-residual", m.slater_residual, tol});
    out.components.push_back({"slater-lhs", m.lhs_match, combined});
    for (std::size_t i = 0; i < m.term_match.size(); ++i) {
      out.components.push_back({"slater-term-" + std::to_string(i + 1), m.term_match[i], combined});
    }
  }
  return out;
}

Outcome run_lattice_invariance(const CheckConfig& cfg, SampleRng& rng) {
  auto ctx = sample_lattice_context(rng, cfg.bits);
  auto p = sample_jackson_parameters(rng, ctx, cfg.s, cfg.n);
  auto z = sample_jackson_point(rng, ctx, cfg.n);
  const double tol = tolerance_of(cfg);
  auto trunc = lattice_truncation(cfg, tol / 10.0);
  std::vector<long> shift(static_cast<std::size_t>(cfg.n), 0);
  shift[0] = 1;
  auto phi = schur_integrand(enumerate(IndexKind::B, cfg.s, cfg.n));
  auto r = lattice_invariance_residual(*phi, z, shift, p, trunc, ctx);
  Outcome out;
  out.parameters = jackson_json(ctx, p, z);
  auto qp = quasi_periodicity_residual(*phi, z, p, trunc, ctx);
  auto weyl = weyl_invariance_residual(*phi, z, p, trunc, ctx, static_cast<unsigned long>(rng.engine()()));
  out.shell_error = std::max({r.shell_error, qp.shell_error, weyl.shell_error});
  out.components.push_back({"lattice-shift", r.residual, 10.0 * trunc.shell_stop});
  out.components.push_back({"quasi-periodicity", qp.residual, 20.0 * qp.shell_error});
  out.components.push_back({"weyl-invariance", weyl.residual, 20.0 * weyl.shell_error});
  return out;
}

Runner runner_for(Identity id) {
  switch (id) {
    case Identity::Bailey: return run_bailey;
    case Identity::Slater: return run_slater;
    case Identity::Duality: return run_duality;
    case Identity::Delta: return run_delta;
    case Identity::MethodAgreement: return run_method_agreement;
    case Identity::QuasiPeriodicity: return run_quasi_periodicity;
    case Identity::TransitionDet: return run_transition_det;
    case Identity::OneCoordinate: return run_one_coordinate;
    case Identity::Vandiejen: return run_vandiejen;
    case Identity::Wronskian: return run_wronskian;
    case Identity::Connection: return run_connection;
    case Identity::LatticeInvariance: return run_lattice_invariance;
  }
  throw ConfigError("unknown identity");
}

SampleRecord run_sample(const CheckConfig& cfg, const Runner& runner, std::size_t index) {
  SampleRecord rec;
  rec.index = index;
  auto start = std::chrono::steady_clock::now();
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    rec.attempts = attempt + 1;
    SampleRng rng(cfg.seed, index, static_cast<std::uint64_t>(attempt));
    try {
      Outcome o = runner(cfg, rng);
      rec.parameters = std::move(o.parameters);
      rec.components = std::move(o.components);
      rec.shell_error = o.shell_error;
      rec.terms = o.terms;
      rec.status = SampleStatus::Pass;
      rec.message.clear();
      for (const auto& c : rec.components) {
        if (!c.pass() || !std::isfinite(c.residual)) rec.status = SampleStatus::Fail;
        if (c.residual >= rec.residual) {
          rec.residual = c.residual;
          rec.threshold = c.threshold;
        }
      }
      break;
    } catch (const Unconverged& e) {
      // Non-decaying samples are rejected and redrawn under the next attempt key.
      rec.status = SampleStatus::Unconverged;
      rec.message = e.what();
    } catch (const std::exception& e) {
      rec.status = SampleStatus::Error;
      rec.message = e.what();
      break;
    }
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view module_operation(Identity id) {
  switch (id) {
    case Identity::Bailey: return "qseries::bailey_residual";
    case Identity::Slater: return "qseries::slater_residual";
    case Identity::Duality: return "interp::duality_residual";
    case Identity::Delta: return "interp::LagrangeBasis::evaluate_all";
    case Identity::MethodAgreement: return "interp::LagrangeBasis::evaluate";
    case Identity::QuasiPeriodicity: return "interp::LagrangeBasis::evaluate";
    case Identity::TransitionDet: return "transition::transition_det_check";
    case Identity::OneCoordinate: return "transition::one_coordinate_factor";
    case Identity::Vandiejen: return "bcjackson::regularized_integral";
    case Identity::Wronskian: return "bcjackson::wronskian_matrix";
    case Identity::Connection: return "bcjackson::connection_check";
    case Identity::LatticeInvariance: return "bcjackson::lattice_invariance_residual";
  }
  return "";
}

double default_tolerance(Identity id) {
  switch (id) {
    case Identity::Bailey: return 1e-25;
    case Identity::Slater: return 1e-20;
    case Identity::Duality: return 1e-25;
    case Identity::Delta: return 1e-28;
    case Identity::MethodAgreement: return 1e-25;
    case Identity::QuasiPeriodicity: return 1e-25;
    case Identity::TransitionDet: return 1e-20;
    case Identity::OneCoordinate: return 1e-25;
    case Identity::Vandiejen: return 1e-15;
    case Identity::Wronskian: return 1e-10;
    case Identity::Connection: return 1e-10;
    case Identity::LatticeInvariance: return 1e-20;
  }
  return 0.0;
}

void CheckConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (samples < 1 || samples > 100000) fail("samples must lie in 1..100000");
  if (bits < 64 || bits > 4096) fail("bits must lie in 64..4096");
  if (s < 1 || s > 4) fail("s must lie in 1..4");
  if (n < 1 || n > 3) fail("n must lie in 1..3");
  if (radius && (*radius < 1 || *radius > 200)) fail("radius must lie in 1..200");
  if (tolerance && !(*tolerance > 0.0)) fail("tolerance must be positive");
  switch (identity) {
    case Identity::Slater:
      if (r < 3 || r > 6) fail("slater needs r in 3..6");
      break;
    case Identity::Duality:
    case Identity::TransitionDet:
    case Identity::OneCoordinate:
      if (s < 2) fail(std::string(identity_name(identity)) + " needs s >= 2");
      break;
    case Identity::Vandiejen:
      if (s != 1) fail("vandiejen needs s = 1");
      break;
    case Identity::Wronskian:
      if (binomial(s + n - 1, n) > 4) fail("wronskian matrix above the cap of 4 rows");
      break;
    case Identity::Connection:
      if (s < 2 || binomial(s + n - 1, n) > 4) fail("connection needs s >= 2 and at most 4 interpolation nodes");
      break;
    case Identity::LatticeInvariance:
      if (s > 3) fail("lattice-invariance needs s <= 3");
      break;
    default:
      break;
  }
}

nlohmann::json CheckConfig::to_json() const {
  nlohmann::json j = {{"identity", identity_name(identity)},
                      {"s", s},
                      {"n", n},
                      {"r", r},
                      {"bits", bits},
                      {"samples", samples},
                      {"seed", seed}};
  j["radius"] = radius ? nlohmann::json(*radius) : nlohmann::json(nullptr);
  j["tolerance"] = tolerance ? nlohmann::json(*tolerance) : nlohmann::json(nullptr);
  return j;
}

void CheckConfig::merge_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "identity") {
        auto id = parse_identity(value.get<std::string>());
        if (!id) throw ConfigError("unknown identity '" + value.get<std::string>() + "'");
        identity = *id;
      } else if (key == "s") {
        s = value.get<int>();
      } else if (key == "n") {
        n = value.get<int>();
      } else if (key == "r") {
        r = value.get<int>();
      } else if (key == "bits") {
        bits = value.get<long>();
      } else if (key == "samples") {
        samples = value.get<int>();
      } else if (key == "seed") {
        seed = value.get<std::uint64_t>();
      } else if (key == "radius") {
        radius = value.is_null() ? std::nullopt : std::optional<int>(value.get<int>());
      } else if (key == "tolerance") {
        tolerance = value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
      } else if (key == "threads") {
        threads = value.get<unsigned>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

VerificationReport run_check(const CheckConfig& cfg) {
  cfg.validate();
  const Runner runner = runner_for(cfg.identity);
  VerificationReport report;
  report.config = cfg;
  report.operation = module_operation(cfg.identity);
  report.version = QLAG_VERSION;
  report.timestamp = utc_timestamp();
  report.samples.resize(static_cast<std::size_t>(cfg.samples));

  unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.samples));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < report.samples.size(); i = next++) report.samples[i] = run_sample(cfg, runner, i);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  bool failed = false;
  bool unconverged = false;
  for (const auto& rec : report.samples) {
    report.max_residual = std::max(report.max_residual, rec.residual);
    failed |= rec.status == SampleStatus::Fail || rec.status == SampleStatus::Error;
    unconverged |= rec.status == SampleStatus::Unconverged;
  }
  report.verdict = failed ? Verdict::Fail : unconverged ? Verdict::Unconverged : Verdict::Pass;
  return report;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Unconverged: return "UNCONVERGED";
  }
  return "";
}

std::string_view status_name(SampleStatus s) {
  switch (s) {
    case SampleStatus::Pass: return "PASS";
    case SampleStatus::Fail: return "FAIL";
    case SampleStatus::Unconverged: return "UNCONVERGED";
    case SampleStatus::Error: return "ERROR";
  }
  return "";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Unconverged: return 2;
  }
  return 1;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["schema"] = 1;
  j["config"] = report.config.to_json();
  j["operation"] = report.operation;
  j["verdict"] = verdict_name(report.verdict);
  j["max_residual"] = report.max_residual;
  j["version"] = report.version;
  j["timestamp"] = report.timestamp;
  auto samples = nlohmann::json::array();
  for (const auto& rec : report.samples) {
    nlohmann::json s = {{"index", rec.index},
                        {"status", status_name(rec.status)},
                        {"attempts", rec.attempts},
                        {"parameters", rec.parameters},
                        {"residual", rec.residual},
                        {"threshold", rec.threshold},
                        {"shell_error", rec.shell_error},
                        {"terms", rec.terms},
                        {"wall_seconds", rec.wall_seconds}};
    auto comps = nlohmann::json::array();
    for (const auto& c : rec.components) {
      comps.push_back({{"name", c.name}, {"residual", c.residual}, {"threshold", c.threshold}});
    }
    s["components"] = comps;
    if (!rec.message.empty()) s["message"] = rec.message;
    samples.push_back(std::move(s));
  }
  j["samples"] = samples;
  return j;
}

}  // namespace qlag::harness
