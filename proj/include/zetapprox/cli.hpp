#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zetapprox/config.hpp"

namespace zetapprox {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNumeric = 2,
  kExitBoundaryRoot = 3,
  /// A verify command ran to completion but its check did not hold.
  kExitVerifyFailed = 4,
};

struct RunOutcome {
  int exitCode = kExitOk;
  /// False only for a verify command whose check failed.
  bool passed = true;
  std::string message;
  std::string csvPath;
  std::string manifestPath;
  /// Headline numbers of the run, also written to the manifest.
  std::vector<std::pair<std::string, std::string>> summary;
};

/// Runs the configured command and writes <prefix>.csv and
/// <prefix>.manifest.json into the output directory. Errors are mapped to
/// exit codes rather than thrown.
RunOutcome run(const RunConfig& config);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& field);

}  // namespace zetapprox
