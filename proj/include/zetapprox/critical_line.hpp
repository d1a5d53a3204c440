#pragma once

#include <complex>
#include <vector>

#include "zetapprox/evaluator.hpp"
#include "zetapprox/model.hpp"

namespace zetapprox {

struct LineScanOptions {
  /// Grid density in samples per expected gap pi / (A log(T + U)).
  int samplesPerGap = 8;
  /// Width to which bracketed roots are refined.
  double rootTol = 1e-9;
  /// Bisection levels spent on an interval whose cubic model dips through zero
  /// without a sign change at the grid points.
  int maxSubdivision = 30;
  /// |zeta_N - a| at or below this makes a candidate a hit.
  double hitTol = 1e-8;
  int workers = 1;
};

struct LineScanResult {
  double T = 0.0;
  double U = 0.0;
  /// The a-value sought; 0 for a zero scan.
  Complex a;
  /// Grid samples with theta on one branch for the whole scan.
  std::vector<LinePoint> samples;
  /// Sign changes of Z, increasing.
  std::vector<double> zeroOrdinates;
  /// Roots of 2 proj_{arg a} z(t) - |a|, increasing.
  std::vector<double> candidates;
  /// |zeta_N(delta/2 + i t) - a| at each candidate.
  std::vector<double> candidateResiduals;
  std::vector<double> hits;
};

/// Spacing of the initial scan grid.
double scan_step(const ApproximationModel& model, double T, double U, int samplesPerGap);

/// Sign changes of Z(t) on [T, T + U]. A lower bound for the number of zeros
/// on the line; tangential zeros are not detected.
LineScanResult count_line_zeros(const ApproximationModel& model, double T, double U,
                                const LineScanOptions& opts = {});

/// Candidates and hits for zeta_N(delta/2 + i t) = a on [T, T + U], a != 0.
LineScanResult avalue_line_census(const ApproximationModel& model, Complex a, double T, double U,
                                  const LineScanOptions& opts = {});

/// dZ/dt with theta on the branch implied by p.theta.
double line_Z_derivative(const ApproximationModel& model, const LinePoint& p);

enum class Simplicity { Simple, Inconclusive };

struct SimplicityReport {
  double t = 0.0;
  /// d/dt arg G(delta/2 + i t).
  double argGDerivative = 0.0;
  /// |dZ/dt|, meaningful as a witness at zeros of Z.
  double slope = 0.0;
  /// |Z(t)| relative to sum |a_n| lambda_n^{-delta/2}.
  double relativeZ = 0.0;
  Simplicity verdict = Simplicity::Inconclusive;
};

/// Simple where the phase of G is strictly decreasing, or at a zero of Z
/// with |dZ/dt| above slopeFloor; otherwise inconclusive.
std::vector<SimplicityReport> simplicity_check(const ApproximationModel& model,
                                               const std::vector<double>& tList,
                                               double slopeFloor = 1e-6);

}  // namespace zetapprox
