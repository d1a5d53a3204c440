#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zetapprox/error.hpp"
#include "zetapprox/model.hpp"

namespace zetapprox {

/// Malformed or invalid run configuration. key() names the offending
/// "section.key" and line() its line in the document when known (else 0).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::string key = {}, int line = 0)
      : Error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

/// "x+yi" with 17 significant digits in each part.
std::string format_complex(Complex z);
/// Accepts "x+yi", "x-yi", "x", "yi" and "i", spaces allowed around the sign.
Complex parse_complex(const std::string& text);
/// Shortest-safe 17 significant digit decimal form.
std::string format_double(double x);

struct ModelSource {
  /// "zeta" or "inline".
  std::string preset = "zeta";
  int N = 3;
  std::vector<Complex> coefficients;
  std::vector<double> exponents;
  double envelopeC = 1.0;
  double envelopeP = 1.0;
  double lambda = 1.0;
  double delta = 1.0;
  std::vector<GammaFactor> omega;
  double sigma0 = 2.0;

  friend bool operator==(const ModelSource&, const ModelSource&) = default;
};

struct CommandParams {
  /// eval, count, locate, scan-line, cluster, strip or verify.
  std::string name;
  /// For verify: spira, count, cluster, critical-zero, critical or strip.
  std::string target;
  Complex a{0.0, 0.0};
  Complex s{0.5, 14.0};
  double T = 1000.0;
  double U = 100.0;
  double eps = 0.05;
  std::optional<double> sigmaBound;
  std::optional<double> sigmaLeft;
  std::optional<double> sigmaRight;
  double sigma = 30.0;
  int gridPoints = 20;
  double hitTol = 1e-8;
  std::optional<double> gamma;
  double radius = 1e-6;
  std::uint64_t seed = 1;
  /// Largest accepted |normalized discrepancy| for verify count.
  double tolerance = 5.0;
  /// Largest accepted outside/total for verify cluster.
  double maxFraction = 0.1;
  /// Smallest accepted line/strip ratio for verify critical-zero.
  double minRatio = 0.9;

  friend bool operator==(const CommandParams&, const CommandParams&) = default;
};

struct OutputParams {
  std::string directory = ".";
  std::string prefix = "zetapprox";

  friend bool operator==(const OutputParams&, const OutputParams&) = default;
};

struct RunConfig {
  ModelSource model;
  CommandParams command;
  OutputParams output;
  int workers = 1;
  /// Invariants that are flagged but tolerated, such as N < 3.
  std::vector<std::string> warnings;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses an INI document with sections [model], [command] and [output].
/// Unknown sections or keys, bad values and model invariant violations throw
/// ConfigError; missing keys take their defaults.
RunConfig parse_config(const std::string& text);

/// Complete INI document, every key present; parse_config inverts it.
std::string serialize(const RunConfig& config);

ApproximationModel build_model(const ModelSource& source);

/// Resolved settings worth recording next to results, including the Psi
/// case of the requested a.
std::vector<std::pair<std::string, std::string>> config_header(const RunConfig& config);

}  // namespace zetapprox
