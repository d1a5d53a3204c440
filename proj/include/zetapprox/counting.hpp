#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "zetapprox/model.hpp"
#include "zetapprox/special.hpp"

namespace zetapprox {

/// sigmaLeft < sigma < sigmaRight, tBottom < t < tTop.
struct RectRegion {
  double sigmaLeft = 0.0;
  double sigmaRight = 0.0;
  double tBottom = 0.0;
  double tTop = 0.0;

  double width() const { return sigmaRight - sigmaLeft; }
  double height() const { return tTop - tBottom; }

  friend bool operator==(const RectRegion&, const RectRegion&) = default;
};

/// Throws InvalidArgument unless the rectangle is non-degenerate and lies
/// strictly above the real axis, where G has no poles.
void check_region(const RectRegion& region);

struct CountOptions {
  UnwrapOptions unwrap;
  /// Largest initial sample spacing along an edge, before adaptive refinement.
  double initialSpacing = 0.25;
  /// Accepted |raw / 2 pi - winding|.
  double residualLimit = 0.01;
  /// Re-runs with halved phase step when a count is rejected.
  int refineRetries = 3;
  /// Offsets tried on an edge that carries an a-value.
  std::vector<double> jitter{1e-3, 3e-3, 1e-2};
  /// Threads used where independent rectangles can be counted side by side.
  int workers = 1;
};

/// Edges in counterclockwise order starting on the right.
enum class Edge { Right = 0, Top = 1, Left = 2, Bottom = 3 };

struct WindingResult {
  /// The rectangle actually counted (after any jitter).
  RectRegion region;
  int winding = 0;
  /// Total unwrapped argument change around the contour, in radians.
  double raw = 0.0;
  double residual = 0.0;
  /// Accepted samples per edge.
  std::array<std::size_t, 4> edgeSamples{};
  bool jittered = false;
};

/// Winding number of zeta_N - a around the rectangle, without jitter.
/// Throws EdgeNearZeroError when an a-value lies on an edge.
WindingResult winding_exact(const ApproximationModel& model, Complex a, const RectRegion& region,
                            const CountOptions& opts = {});

/// Like winding_exact but moves an offending edge through the jitter schedule
/// (expand, then contract, for each offset) before giving up with
/// BoundaryRootError.
WindingResult count_winding(const ApproximationModel& model, Complex a, const RectRegion& region,
                            const CountOptions& opts = {});

/// Number of a-values of zeta_N inside the region.
int winding_count(const ApproximationModel& model, Complex a, const RectRegion& region,
                  const CountOptions& opts = {});

/// Near-zero failure tagged with the edge it happened on.
class EdgeNearZeroError : public NearZeroError {
 public:
  EdgeNearZeroError(const NearZeroError& inner, Edge edge)
      : NearZeroError(inner.what(), inner.where()), edge_(edge) {}
  Edge edge() const { return edge_; }

 private:
  Edge edge_;
};

struct LocatedRoot {
  Complex center;
  /// Half the diagonal of the certifying box.
  double radius = 0.0;
  int multiplicity = 1;
  RectRegion box;
};

struct LocateOptions {
  CountOptions count;
  /// Boxes below this diagonal that still wind more than once are reported
  /// as one root with that multiplicity.
  double minBox = 1e-9;
};

/// Bisects the longer side of every box with positive winding until each box
/// has diagonal <= radius and winding 1. Output is sorted by height.
std::vector<LocatedRoot> locate_roots(const ApproximationModel& model, Complex a,
                                      const RectRegion& region, double radius = 1e-6,
                                      const LocateOptions& opts = {});

struct ClusterReport {
  int total = 0;
  int within = 0;
  double epsilon = 0.0;
  int outside = 0;
  RectRegion outer;
  RectRegion band;
};

/// a-values with T < t < T + U, counted in |sigma - delta/2| < sigmaBound
/// (total) and in |sigma - delta/2| < eps (within).
ClusterReport cluster_census(const ApproximationModel& model, Complex a, double T, double U,
                             double eps, double sigmaBound, const CountOptions& opts = {});

struct StripPoint {
  double t = 0.0;
  Complex value;
  bool pass = false;
};

struct StripReport {
  double sigma = 0.0;
  /// True when sigma lies right of the critical line.
  bool rightSide = true;
  /// a == a_1: the right-side test uses (zeta_N - a) lambda_2^s.
  bool shiftedPredicate = false;
  std::vector<StripPoint> points;
  bool allPass = false;
  /// Smallest sigma on the 0.25 lattice (measured from delta/2 toward sigma)
  /// from which the predicate holds on the whole grid up to sigma itself.
  std::optional<double> minimalSigma;
};

/// Right of the line: zeta_N - a in D(a_1 - a, |a_1 - a|/2), or for a = a_1,
/// (zeta_N - a) lambda_2^s in D(a_2, |a_2|/2). Left: |zeta_N - a| > 1.
StripReport strip_check(const ApproximationModel& model, Complex a, double sigma,
                        const std::vector<double>& tGrid);

/// Evaluates only the predicate at one point.
bool strip_predicate(const ApproximationModel& model, Complex a, Complex s);

/// 1.5 times the larger of the two sides' minimal strip distances on a
/// uniform grid over [T, T + U]; the distance is measured from delta/2.
double calibrate_sigma_bound(const ApproximationModel& model, Complex a, double T, double U,
                             int gridPoints = 64, double maxDistance = 60.0);

}  // namespace zetapprox
