#include "golden.hpp"

#include "evaluate.hpp"
#include "json_util.hpp"

#include "qlag/errors.hpp"

#include <cmath>
#include <fstream>

namespace qlag::harness {

namespace {

struct Case {
  const char* name;
  const char* kind;
  const char* q;
  nlohmann::json inputs;
};

const std::vector<Case>& battery() {
  static const std::vector<Case> cases = {
      {"qpoch-inf-real", "qpoch", "0.3", {{"u", "0.7"}}},
      {"qpoch-inf-complex", "qpoch", "0.25,0.35", {{"u", "-1.2,0.4"}}},
      {"qpoch-finite-positive", "qpoch", "0.45", {{"u", "2.5,-0.5"}, {"nu", "5"}}},
      {"qpoch-finite-negative", "qpoch", "0.45", {{"u", "0.6,0.1"}, {"nu", "-4"}}},
      {"theta-real", "theta", "0.3", {{"u", "1.7"}}},
      {"theta-complex", "theta", "-0.2,0.5", {{"u", "0.3,-0.8"}}},
      {"e-symbol", "e-symbol", "0.3", {{"a", "0.8,0.2"}, {"b", "1.9,-0.4"}}},
      {"e-factorial", "e-factorial", "0.35", {{"a", "0.7"}, {"b", "1.3,0.5"}, {"t", "0.6,0.1"}, {"r", "3"}}},
      {"schur-2", "schur", "0.3", {{"lambda", "2,1"}, {"z", "0.7,0.2;1.3,-0.4"}}},
      {"schur-3", "schur", "0.3", {{"lambda", "1,1,0"}, {"z", "0.9;1.4,0.3;-0.6,0.5"}}},
      {"interp-2-2", "interp", "0.4",
       {{"lambda", "1,1"}, {"x", "0.8,0.1;1.3"}, {"t", "0.55,0.05"}, {"z", "0.9,-0.3;1.1,0.2"}}},
      {"interp-3-2", "interp", "0.35",
       {{"lambda", "0,1,1"}, {"x", "0.8;1.2,0.3;0.65,-0.2"}, {"t", "0.5"}, {"z", "1.05,0.1;0.7,-0.25"}}},
      {"transition-det", "transition-det", "0.3",
       {{"x", "0.8,0.1;1.3"}, {"y", "1.1;0.7,-0.2"}, {"t", "0.6"}, {"n", "2"}}},
      {"vandiejen-product", "vandiejen-product", "0.3",
       {{"a", "1.3;1.6;1.9;1.45"}, {"t", "0.8"}, {"n", "2"}}},
      {"wronskian-closed", "wronskian-closed", "0.2",
       {{"a", "1.3;1.6;1.9;1.45;1.7;1.25"}, {"x", "0.77;0.62"}, {"t", "0.85"}, {"n", "2"}}},
  };
  return cases;
}

PrecisionContext context_for(const nlohmann::json& q, long bits) {
  Complex value = q.is_string() ? Complex::parse(q.get<std::string>(), static_cast<mpfr_prec_t>(bits))
                                : complex_from_json(q, static_cast<mpfr_prec_t>(bits));
  return PrecisionContext(bits, value);
}

}  // namespace

nlohmann::json GoldenReport::to_json() const {
  nlohmann::json j = {{"checked", checked}, {"ok", ok()}};
  auto mm = nlohmann::json::array();
  for (const auto& m : mismatches) {
    mm.push_back({{"name", m.name}, {"expected", m.expected}, {"actual", m.actual}, {"relative", m.relative}});
  }
  j["mismatches"] = mm;
  j["errors"] = errors;
  return j;
}

nlohmann::json golden_battery(long bits) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& c : battery()) {
    auto ctx = context_for(c.q, bits);
    entries.push_back({{"name", c.name},
                       {"kind", c.kind},
                       {"q", c.q},
                       {"inputs", c.inputs},
                       {"value", complex_json(evaluate(c.kind, c.inputs, ctx))}});
  }
  return {{"schema", 1}, {"bits", bits}, {"entries", entries}};
}

GoldenReport verify_goldens(const nlohmann::json& file, long bits, double tolerance) {
  GoldenReport report;
  if (!file.is_object() || !file.contains("entries") || !file["entries"].is_array()) {
    report.errors.push_back("golden file has no 'entries' array");
    return report;
  }
  if (file.value("schema", 0) != 1) report.errors.push_back("unsupported golden schema");
  std::size_t position = 0;
  for (const auto& e : file["entries"]) {
    std::string label = "entry " + std::to_string(position++);
    try {
      label = e.at("name").get<std::string>();
      auto ctx = context_for(e.at("q"), bits);
      Complex expected = complex_from_json(e.at("value"), ctx.prec());
      Complex actual = evaluate(e.at("kind").get<std::string>(), e.at("inputs"), ctx);
      ++report.checked;
      double rel = relative_difference(expected, actual);
      if (!(rel <= tolerance)) {
        report.mismatches.push_back({label, expected.to_string(30), actual.to_string(30), rel});
      }
    } catch (const std::exception& ex) {
      report.errors.push_back(label + ": " + ex.what());
    }
  }
  return report;
}

void write_golden_file(const std::string& path, long bits) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write golden file '" + path + "'");
  out << golden_battery(bits).dump(2) << '\n';
}

GoldenReport verify_golden_file(const std::string& path, long bits, double tolerance) {
  std::ifstream in(path);
  if (!in) {
    GoldenReport r;
    r.errors.push_back("cannot read golden file '" + path + "'");
    return r;
  }
  nlohmann::json file;
  try {
    in >> file;
  } catch (const nlohmann::json::exception& ex) {
    GoldenReport r;
    r.errors.push_back(std::string("malformed golden file: ") + ex.what());
    return r;
  }
  return verify_goldens(file, bits, tolerance);
}

}  // namespace qlag::harness
