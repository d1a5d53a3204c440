#pragma once

#include <complex>
#include <optional>
#include <string>

#include "zetapprox/model.hpp"

namespace zetapprox {

/// Everything the closed-form a-value count needs.
struct PredictionInput {
  double A = 0.0;
  double B = 0.0;
  double lambda = 1.0;
  double lambda2 = 2.0;
  Complex a;
  Complex a1;
  double T = 0.0;
  double U = 0.0;
  int N = 1;
  double gamma = 1.0;
};

/// Gathers the constants of `model`; gamma defaults to default_gamma(model).
PredictionInput prediction_input(const ApproximationModel& model, Complex a, double T, double U,
                                 std::optional<double> gamma = std::nullopt);

enum class PsiCase { AOffZeroA1, AEqualsNonZeroA1, Otherwise };

/// Exact comparison of the supplied values; no tolerance.
PsiCase psi_case(Complex a, Complex a1);

/// Human-readable case label, e.g. "a = a1 != 0".
std::string psi_case_label(PsiCase c);

/// +log(lambda2)/2 if a != a1 = 0, -log(lambda2)/2 if a = a1 != 0, else 0.
double psi_constant(Complex a, Complex a1, double lambda2);

struct Prediction {
  /// (A/pi)((T+U) log(T+U) - T log T) + ((B - log lambda + Psi)/pi) U.
  double value = 0.0;
  /// N^gamma log(T+U), the size of the error term up to its constant.
  double scale = 0.0;
  double psi = 0.0;
};

Prediction predicted_count(const PredictionInput& in);

struct Discrepancy {
  double empirical = 0.0;
  double predicted = 0.0;
  double difference = 0.0;
  /// difference / scale.
  double normalized = 0.0;
};

Discrepancy compare(double empirical, double predicted, double scale);

}  // namespace zetapprox
