#include "harness/check.hpp"
#include "harness/evaluate.hpp"
#include "harness/golden.hpp"

#include "qlag/errors.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace qlag;
using namespace qlag::harness;

constexpr int kConfigExit = 3;

struct CheckArgs {
  std::string identity;
  std::string config_file;
  std::string json_out;
  int s = 0, n = 0, r = 0, samples = 0, radius = 0;
  long bits = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  unsigned threads = 0;
};

void write_json(const nlohmann::json& j, const std::string& path) {
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

int run_check_command(const CheckArgs& a, const CLI::App& cmd) {
  CheckConfig cfg;
  if (!a.config_file.empty()) {
    std::ifstream in(a.config_file);
    if (!in) throw ConfigError("cannot read config '" + a.config_file + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed config: ") + e.what());
    }
    cfg.merge_json(j);
  }
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--identity")) {
    auto id = parse_identity(a.identity);
    if (!id) throw ConfigError("unknown identity '" + a.identity + "'");
    cfg.identity = *id;
  } else if (a.config_file.empty()) {
    throw ConfigError("--identity is required");
  }
  if (given("--s")) cfg.s = a.s;
  if (given("--n")) cfg.n = a.n;
  if (given("--r")) cfg.r = a.r;
  if (given("--samples")) cfg.samples = a.samples;
  if (given("--seed")) cfg.seed = a.seed;
  if (given("--bits")) cfg.bits = a.bits;
  if (given("--radius")) cfg.radius = a.radius;
  if (given("--tolerance")) cfg.tolerance = a.tolerance;
  if (given("--threads")) cfg.threads = a.threads;

  auto report = run_check(cfg);
  std::printf("%s s=%d n=%d samples=%d seed=%llu bits=%ld\n", std::string(identity_name(cfg.identity)).c_str(), cfg.s,
              cfg.n, cfg.samples, static_cast<unsigned long long>(cfg.seed), cfg.bits);
  for (const auto& rec : report.samples) {
    std::printf("  #%-4zu %-11s residual %.3e  threshold %.3e  %.2fs%s%s\n", rec.index,
                std::string(status_name(rec.status)).c_str(), rec.residual, rec.threshold, rec.wall_seconds,
                rec.message.empty() ? "" : "  ", rec.message.c_str());
  }
  std::printf("%s  max residual %.3e\n", std::string(verdict_name(report.verdict)).c_str(), report.max_residual);
  if (!a.json_out.empty()) write_json(to_json(report), a.json_out);
  return exit_code(report.verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiprecision verification of q-series, interpolation and lattice-sum identities"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Sample an identity and report residuals");
  std::vector<std::string> names;
  for (auto id : kAllIdentities) names.emplace_back(identity_name(id));
  check->add_option("--identity", ca.identity, "Identity to verify")->check(CLI::IsMember(names));
  check->add_option("--s", ca.s, "Rank s");
  check->add_option("--n", ca.n, "Degree n");
  check->add_option("--r", ca.r, "Slater order r");
  check->add_option("--samples", ca.samples, "Number of random samples");
  check->add_option("--seed", ca.seed, "Random seed");
  check->add_option("--bits", ca.bits, "Working precision in bits");
  check->add_option("--radius", ca.radius, "Lattice truncation radius");
  check->add_option("--tolerance", ca.tolerance, "Residual floor");
  check->add_option("--threads", ca.threads, "Worker threads (0 = all cores)");
  check->add_option("--config", ca.config_file, "JSON config file; flags override its keys");
  check->add_option("--json", ca.json_out, "Write the JSON report to this path ('-' for stdout)");

  std::string kind;
  std::vector<std::string> assignments;
  std::string eval_q = "0.3";
  long eval_bits = 256;
  int digits = 40;
  auto* eval = app.add_subcommand("eval", "Evaluate a single quantity");
  eval->add_option("kind", kind, "Quantity to evaluate")->required()->check(CLI::IsMember(eval_kinds()));
  eval->add_option("args", assignments, "Arguments as key=value");
  eval->add_option("--q", eval_q, "Base q as 're' or 're,im'");
  eval->add_option("--bits", eval_bits, "Working precision in bits");
  eval->add_option("--digits", digits, "Significant digits to print");

  std::string action;
  std::string golden_path = "goldens.json";
  long golden_bits = 256;
  double golden_tol = std::ldexp(1.0, -200);
  auto* golden = app.add_subcommand("golden", "Write or verify the reference value battery");
  golden->add_option("action", action, "update or verify")->required()->check(CLI::IsMember({"update", "verify"}));
  golden->add_option("--goldens", golden_path, "Golden file path");
  golden->add_option("--bits", golden_bits, "Precision used by verify");
  golden->add_option("--tolerance", golden_tol, "Relative tolerance used by verify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    if (*check) return run_check_command(ca, *check);
    if (*eval) {
      PrecisionContext ctx(eval_bits, Complex::parse(eval_q, static_cast<mpfr_prec_t>(eval_bits)));
      std::cout << evaluate(kind, parse_assignments(assignments), ctx).to_string(digits) << '\n';
      return 0;
    }
    if (action == "update") {
      write_golden_file(golden_path);
      std::cout << "wrote " << golden_path << '\n';
      return 0;
    }
    auto report = verify_golden_file(golden_path, golden_bits, golden_tol);
    std::cout << report.to_json().dump(2) << '\n';
    return report.ok() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const qlag::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
