#pragma once

// Identity suites behind `ladder verify`. Each check records its mode (exact or
// float), the largest residual seen, the tolerance it was judged against, and
// the number of cases covered.

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ladder/opalgebra.hpp"

namespace ladder {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Suite { Exact, Algebra, Quadrature, Plane, So32 };

std::string_view name_of(Suite suite);
std::optional<Suite> suite_from_name(std::string_view name);
std::vector<Suite> all_suites();

struct SignFault {
  OperatorName op = OperatorName::Jplus;
  BasisIndex at{1, 2};
};

struct VerifyOptions {
  int nmax = 12;
  int order = 64;
  int angular = 64;
  int jmax = 6;
  unsigned workers = 1;
  std::optional<SignFault> fault;

  /// Throws ConfigurationError for out-of-range limits.
  void validate() const;
  Realization realization() const;
};

struct CheckResult {
  std::string name;
  std::string mode;  // "exact" or "float"
  double max_residual = 0.0;
  double tolerance = 0.0;
  long cases = 0;
  bool pass = true;
  nlohmann::json details = nlohmann::json::object();
};

struct SuiteReport {
  Suite suite;
  std::vector<CheckResult> checks;
  bool pass() const;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<SuiteReport> suites;

  bool pass() const;
  std::vector<std::string> failed_checks() const;
  nlohmann::json to_json() const;
};

SuiteReport run_suite(Suite suite, const VerifyOptions& options);

/// Runs the suites on up to options.workers threads; the report keeps the
/// requested order.
VerifyReport run_verification(std::span<const Suite> suites, const VerifyOptions& options);

}  // namespace ladder
