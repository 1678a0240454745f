#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace qlag::harness {

constexpr long kGoldenBits = 512;

struct GoldenMismatch {
  std::string name;
  std::string expected;
  std::string actual;
  double relative = 0.0;
};

struct GoldenReport {
  std::size_t checked = 0;
  std::vector<GoldenMismatch> mismatches;
  /// Structural problems: unreadable file, missing keys, unknown kinds.
  std::vector<std::string> errors;
  bool ok() const { return mismatches.empty() && errors.empty(); }
  nlohmann::json to_json() const;
};

/// Fixed battery of reference values computed at `bits` of precision.
nlohmann::json golden_battery(long bits = kGoldenBits);

/// Recomputes every entry at `bits` and compares with relative tolerance.
GoldenReport verify_goldens(const nlohmann::json& file, long bits, double tolerance);

void write_golden_file(const std::string& path, long bits = kGoldenBits);
GoldenReport verify_golden_file(const std::string& path, long bits, double tolerance);

}  // namespace qlag::harness
