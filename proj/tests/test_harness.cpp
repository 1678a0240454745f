#include "doctest.h"

#include "harness/check.hpp"
#include "harness/evaluate.hpp"
#include "harness/golden.hpp"
#include "harness/sampling.hpp"

#include "qlag/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

using namespace qlag;
using namespace qlag::harness;

namespace {

CheckConfig make(Identity id, int s, int n, int samples, std::uint64_t seed = 1) {
  CheckConfig cfg;
  cfg.identity = id;
  cfg.s = s;
  cfg.n = n;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

Complex eval(const char* kind, std::vector<std::string> args, const char* q = "0.3") {
  auto ctx = PrecisionContext::with_real_q(256, q);
  return evaluate(kind, parse_assignments(args), ctx);
}

std::string temp_path(const char* name) { return std::string("/tmp/qlag_test_") + name; }

}  // namespace

TEST_CASE("every identity maps to one module operation and round-trips its name") {
  std::set<std::string> names;
  for (auto id : kAllIdentities) {
    CHECK_FALSE(module_operation(id).empty());
    CHECK(default_tolerance(id) > 0.0);
    auto name = std::string(identity_name(id));
    CHECK(parse_identity(name) == id);
    names.insert(name);
  }
  CHECK(names.size() == kAllIdentities.size());
  CHECK_FALSE(parse_identity("bogus").has_value());
}

TEST_CASE("sample streams depend only on their key") {
  SampleRng a(5, 3, 0);
  SampleRng b(5, 3, 0);
  SampleRng c(5, 3, 1);
  double x = a.uniform(0, 1);
  CHECK(x == b.uniform(0, 1));
  CHECK(x != c.uniform(0, 1));
  auto ctx = PrecisionContext::with_real_q(128, "0.4");
  SampleRng d(9, 0);
  for (int i = 0; i < 20; ++i) {
    double m = d.annulus(ctx, -0.5, 0.5).abs_approx();
    CHECK(m > std::pow(0.4, 0.5) * 0.999);
    CHECK(m < std::pow(0.4, -0.5) * 1.001);
  }
}

TEST_CASE("reference runs") {
  auto bailey = run_check(make(Identity::Bailey, 2, 1, 20, 1));
  CHECK(bailey.verdict == Verdict::Pass);
  CHECK(bailey.max_residual < 1e-25);

  auto delta = run_check(make(Identity::Delta, 2, 2, 2));
  CHECK(delta.verdict == Verdict::Pass);
  CHECK(delta.max_residual < 1e-30);

  auto vd = run_check(make(Identity::Vandiejen, 1, 1, 2));
  CHECK(vd.verdict == Verdict::Pass);
  CHECK(vd.samples[0].terms > 0);
  CHECK(vd.samples[0].shell_error > 0.0);
}

TEST_CASE("a tolerance below the noise floor turns into FAIL, not an abort") {
  auto cfg = make(Identity::Bailey, 2, 1, 3);
  cfg.tolerance = 1e-200;
  auto report = run_check(cfg);
  CHECK(report.verdict == Verdict::Fail);
  CHECK(exit_code(report.verdict) == 1);
  CHECK(report.samples.size() == 3);
  for (const auto& rec : report.samples) CHECK(rec.status == SampleStatus::Fail);
}

TEST_CASE("a radius too small to converge gives UNCONVERGED") {
  auto cfg = make(Identity::Vandiejen, 1, 1, 2);
  cfg.radius = 2;
  auto report = run_check(cfg);
  CHECK(report.verdict == Verdict::Unconverged);
  CHECK(exit_code(report.verdict) == 2);
  CHECK(report.samples[0].attempts == 4);
}

TEST_CASE("thread count does not change results") {
  auto cfg = make(Identity::MethodAgreement, 2, 2, 5, 77);
  cfg.threads = 1;
  auto a = run_check(cfg);
  cfg.threads = 4;
  auto b = run_check(cfg);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].parameters == b.samples[i].parameters);
    CHECK(a.samples[i].residual == b.samples[i].residual);
  }
}

TEST_CASE("invalid configurations are rejected before sampling") {
  CHECK_THROWS_AS(run_check(make(Identity::Wronskian, 3, 3, 1)), ConfigError);
  CHECK_THROWS_AS(run_check(make(Identity::Vandiejen, 2, 1, 1)), ConfigError);
  CHECK_THROWS_AS(run_check(make(Identity::Duality, 1, 2, 1)), ConfigError);
  CHECK_THROWS_AS(run_check(make(Identity::Bailey, 2, 1, 0)), ConfigError);
  auto slater = make(Identity::Slater, 2, 1, 1);
  slater.r = 9;
  CHECK_THROWS_AS(run_check(slater), ConfigError);
  auto bits = make(Identity::Bailey, 2, 1, 1);
  bits.bits = 8;
  CHECK_THROWS_AS(run_check(bits), ConfigError);
}

TEST_CASE("config JSON round trip and errors") {
  auto cfg = make(Identity::Connection, 2, 2, 7, 42);
  cfg.radius = 30;
  cfg.tolerance = 1e-12;
  CheckConfig back;
  back.merge_json(cfg.to_json());
  CHECK(back.identity == Identity::Connection);
  CHECK(back.s == 2);
  CHECK(back.n == 2);
  CHECK(back.samples == 7);
  CHECK(back.seed == 42);
  CHECK(back.radius == 30);
  CHECK(back.tolerance == 1e-12);

  CheckConfig bad;
  CHECK_THROWS_AS(bad.merge_json({{"colour", 1}}), ConfigError);
  CHECK_THROWS_AS(bad.merge_json({{"identity", "nope"}}), ConfigError);
  CHECK_THROWS_AS(bad.merge_json({{"s", "two"}}), ConfigError);
  CHECK_THROWS_AS(bad.merge_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("report JSON carries full-precision parameters") {
  auto report = run_check(make(Identity::Duality, 2, 1, 2));
  auto j = to_json(report);
  CHECK(j["schema"] == 1);
  CHECK(j["verdict"] == "PASS");
  CHECK(j["config"]["identity"] == "duality");
  CHECK(j["operation"] == "interp::duality_residual");
  CHECK(j["samples"].size() == 2);
  const auto& t = j["samples"][0]["parameters"]["t"];
  REQUIRE(t.is_array());
  CHECK(t[0].get<std::string>().size() > 70);
  CHECK(j["samples"][0]["components"][0]["name"] == "duality");
}

TEST_CASE("eval examples") {
  CHECK(eval("theta", {"u=1"}).is_zero());
  CHECK(relative_difference(eval("schur", {"lambda=0,0", "z=2;3"}), Complex(1L, 256)) < 1e-70);
  CHECK(relative_difference(eval("interp", {"lambda=1,1", "x=0.8;1.3", "t=0.5"}), Complex(1L, 256)) < 1e-60);
  CHECK(eval("interp", {"lambda=1,1", "at=2,0", "x=0.8;1.3", "t=0.5"}).abs_approx() < 1e-60);
  CHECK(relative_difference(eval("qpoch", {"u=0.5", "nu=2"}), Complex::parse("0.425", 256)) < 1e-70);
  auto lattice = eval("jackson", {"a=1.3;1.6;1.9;1.45", "t=0.8", "z=0.71"});
  auto product = eval("vandiejen-product", {"a=1.3;1.6;1.9;1.45", "t=0.8", "n=1"});
  CHECK(relative_difference(lattice, product) < 1e-25);

  CHECK_THROWS_AS(eval("nope", {}), ConfigError);
  CHECK_THROWS_AS(eval("theta", {}), ConfigError);
  CHECK_THROWS_AS(eval("theta", {"u=abc"}), ConfigError);
  CHECK_THROWS_AS(parse_assignments({"novalue"}), ConfigError);
  CHECK(eval_kinds().size() == 10);
}

TEST_CASE("golden round trip") {
  auto path = temp_path("golden.json");
  write_golden_file(path);
  auto same = verify_golden_file(path, kGoldenBits, 0.0);
  CHECK(same.ok());
  auto lower = verify_golden_file(path, 256, std::ldexp(1.0, -200));
  CHECK(lower.ok());
  CHECK(lower.checked == 15);
  auto coarse = verify_golden_file(path, 96, std::ldexp(1.0, -200));
  CHECK_FALSE(coarse.mismatches.empty());
  std::remove(path.c_str());
}

TEST_CASE("corrupted golden files give structured reports") {
  auto file = golden_battery(256);
  auto altered = file;
  altered["entries"][0]["value"][0] = "0.123";
  auto r = verify_goldens(altered, 256, 1e-60);
  REQUIRE(r.mismatches.size() == 1);
  CHECK(r.mismatches[0].name == file["entries"][0]["name"]);
  CHECK(r.mismatches[0].relative > 1e-3);

  auto missing = file;
  missing["entries"][1].erase("inputs");
  missing["entries"][2]["kind"] = "mystery";
  auto m = verify_goldens(missing, 256, 1e-60);
  CHECK(m.errors.size() == 2);
  CHECK(m.checked == file["entries"].size() - 2);
  CHECK_FALSE(verify_goldens(nlohmann::json::object(), 256, 1e-60).ok());

  auto path = temp_path("broken.json");
  {
    std::ofstream out(path);
    out << "{ \"entries\": [ ";
  }
  auto broken = verify_golden_file(path, 256, 1e-60);
  CHECK(broken.errors.size() == 1);
  CHECK(broken.to_json()["ok"] == false);
  std::remove(path.c_str());
  CHECK_FALSE(verify_golden_file(temp_path("absent.json"), 256, 1e-60).ok());
}
