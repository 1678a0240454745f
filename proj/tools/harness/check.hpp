#pragma once

#include "identity.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qlag::harness {

struct CheckConfig {
  Identity identity = Identity::Bailey;
  int s = 2;
  int n = 1;
  int r = 4;
  long bits = 256;
  std::optional<int> radius;
  int samples = 10;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 0;

  /// Throws ConfigError for out-of-range values and for (s, n, r) above the caps of the identity.
  void validate() const;
  nlohmann::json to_json() const;
  /// Reads the keys written by to_json(); missing keys keep their current values.
  void merge_json(const nlohmann::json& j);
};

/// One named quantity compared against its own threshold.
struct Component {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass() const { return residual < threshold; }
};

enum class SampleStatus { Pass, Fail, Unconverged, Error };
enum class Verdict { Pass, Fail, Unconverged };

struct SampleRecord {
  std::size_t index = 0;
  int attempts = 1;
  nlohmann::json parameters;
  std::vector<Component> components;
  double residual = 0.0;     // largest component residual
  double threshold = 0.0;    // threshold of that component
  double shell_error = 0.0;  // largest lattice shell error used, 0 for exact-series identities
  long terms = 0;
  double wall_seconds = 0.0;
  SampleStatus status = SampleStatus::Pass;
  std::string message;
};

struct VerificationReport {
  CheckConfig config;
  std::string operation;  // library operation exercised by the identity
  std::vector<SampleRecord> samples;
  Verdict verdict = Verdict::Pass;
  double max_residual = 0.0;
  std::string version;
  std::string timestamp;
};

/// Library operation behind each identity; total over kAllIdentities.
std::string_view module_operation(Identity id);
/// Residual floor used when no tolerance override is given.
double default_tolerance(Identity id);

/// Runs every sample (concurrently, collected in index order) and aggregates
/// the verdict. Throws ConfigError before sampling when the config is invalid.
VerificationReport run_check(const CheckConfig& cfg);

nlohmann::json to_json(const VerificationReport& report);
std::string_view verdict_name(Verdict v);
std::string_view status_name(SampleStatus s);
/// 0 PASS, 1 FAIL, 2 UNCONVERGED.
int exit_code(Verdict v);

}  // namespace qlag::harness
