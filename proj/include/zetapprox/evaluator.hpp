#pragma once

#include <complex>
#include <optional>

#include "zetapprox/model.hpp"

namespace zetapprox {

/// F_N(s) = sum_n a_n lambda_n^{-s}, summed in ascending n.
Complex eval_FN(const SeriesSpec& series, Complex s);

/// F_N'(s) = -sum_n a_n log(lambda_n) lambda_n^{-s}.
Complex eval_FN_derivative(const SeriesSpec& series, Complex s);

/// zeta_N(s) = F_N(s) + G(s) F_N(delta - s).
Complex eval_zetaN(const ApproximationModel& model, Complex s);

/// zeta_N'(s), using G' = G (log G)'.
Complex eval_zetaN_derivative(const ApproximationModel& model, Complex s);

/// Re(z e^{-i alpha}), the coordinate of z along the direction alpha.
inline double proj(double alpha, Complex z) {
  return (z * std::polar(1.0, -alpha)).real();
}

/// Sample of the critical line sigma = delta/2.
struct LinePoint {
  double t = 0.0;
  /// F_N(delta/2 + i t).
  Complex z;
  /// Continuous arg G(delta/2 + i t).
  double theta = 0.0;
  /// Continuous arg z; empty where |z| is below tolerance.
  std::optional<double> phi;
  /// 2 Re(z e^{-i theta / 2}).
  double Z = 0.0;
};

/// Evaluates the critical-line quantities at t.
///
/// Without prev, theta is the principal value of arg G. With prev, theta is
/// continued from prev through the analytic phase of log G, which is
/// continuous for t > 0, and phi is continued by a principal step. Throws
/// BranchError if either phase moves by pi or more from prev.
LinePoint line_point(const ApproximationModel& model, double t,
                     const std::optional<LinePoint>& prev = std::nullopt);

/// e^{-i theta/2} zeta_N(delta/2 + i t), computed as a complex number. Real
/// up to rounding for real-coefficient models, where it equals Z.
Complex rotated_line_value(const ApproximationModel& model, const LinePoint& p);

/// Threshold below which |z| counts as a zero of F_N on the line.
double line_zero_tolerance(const SeriesSpec& series, double sigma);

}  // namespace zetapprox
