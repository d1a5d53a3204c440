#include "zetapprox/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zetapprox/evaluator.hpp"
#include "zetapprox/parallel.hpp"

namespace zetapprox {

void check_region(const RectRegion& r) {
  if (!(std::isfinite(r.sigmaLeft) && std::isfinite(r.sigmaRight) && std::isfinite(r.tBottom) &&
        std::isfinite(r.tTop))) {
    throw InvalidArgument("region: non-finite bound");
  }
  if (!(r.sigmaLeft < r.sigmaRight)) throw InvalidArgument("region: sigmaLeft >= sigmaRight");
  if (!(r.tBottom < r.tTop)) throw InvalidArgument("region: tBottom >= tTop");
  if (!(r.tBottom > 0.0)) throw InvalidArgument("region: tBottom must be positive");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Segment edge_segment(const RectRegion& r, Edge e) {
  const Complex br(r.sigmaRight, r.tBottom), tr(r.sigmaRight, r.tTop);
  const Complex tl(r.sigmaLeft, r.tTop), bl(r.sigmaLeft, r.tBottom);
  switch (e) {
    case Edge::Right:
      return {br, tr};
    case Edge::Top:
      return {tr, tl};
    case Edge::Left:
      return {tl, bl};
    case Edge::Bottom:
      break;
  }
  return {bl, br};
}

// Moves one edge outward (direction +1) or inward (-1) by d.
RectRegion move_edge(RectRegion r, Edge e, double direction, double d) {
  switch (e) {
    case Edge::Right:
      r.sigmaRight += direction * d;
      break;
    case Edge::Top:
      r.tTop += direction * d;
      break;
    case Edge::Left:
      r.sigmaLeft -= direction * d;
      break;
    case Edge::Bottom:
      r.tBottom -= direction * d;
      break;
  }
  return r;
}

bool region_ok(const RectRegion& r) {
  return r.sigmaLeft < r.sigmaRight && r.tBottom < r.tTop && r.tBottom > 0.0;
}

WindingResult jittered_count(const ApproximationModel& model, Complex a, const RectRegion& region,
                             const CountOptions& opts, unsigned moved) {
  try {
    return winding_exact(model, a, region, opts);
  } catch (const EdgeNearZeroError& e) {
    const unsigned bit = 1u << static_cast<unsigned>(e.edge());
    if (moved & bit) throw;
    for (double d : opts.jitter) {
      for (double direction : {1.0, -1.0}) {
        const RectRegion trial = move_edge(region, e.edge(), direction, d);
        if (!region_ok(trial)) continue;
        try {
          WindingResult res = jittered_count(model, a, trial, opts, moved | bit);
          res.jittered = true;
          return res;
        } catch (const NearZeroError&) {
        } catch (const BoundaryRootError&) {
        }
      }
    }
    throw BoundaryRootError("winding: a-value on the contour survived the jitter schedule");
  }
}

double diagonal(const RectRegion& r) { return std::hypot(r.width(), r.height()); }

RectRegion lower_or_left(const RectRegion& r, bool split_sigma, double cut) {
  RectRegion out = r;
  if (split_sigma) {
    out.sigmaRight = cut;
  } else {
    out.tTop = cut;
  }
  return out;
}

RectRegion upper_or_right(const RectRegion& r, bool split_sigma, double cut) {
  RectRegion out = r;
  if (split_sigma) {
    out.sigmaLeft = cut;
  } else {
    out.tBottom = cut;
  }
  return out;
}

struct Box {
  RectRegion region;
  int winding = 0;
};

constexpr double kSplitFractions[] = {0.5, 0.5173, 0.4709, 0.5447, 0.4387};

// Splits the longer side; the off-centre fractions are fallbacks for when an
// a-value sits on the cut or the halves disagree with the parent.
std::vector<Box> split_box(const ApproximationModel& model, Complex a, const Box& box,
                           const CountOptions& opts) {
  const RectRegion& r = box.region;
  const bool split_sigma = r.width() >= r.height();
  const double lo = split_sigma ? r.sigmaLeft : r.tBottom;
  const double len = split_sigma ? r.width() : r.height();
  for (double frac : kSplitFractions) {
    const double cut = lo + frac * len;
    const RectRegion first = lower_or_left(r, split_sigma, cut);
    const RectRegion second = upper_or_right(r, split_sigma, cut);
    try {
      const int w1 = winding_exact(model, a, first, opts).winding;
      const int w2 = winding_exact(model, a, second, opts).winding;
      if (w1 + w2 != box.winding) continue;
      std::vector<Box> out;
      if (w1 > 0) out.push_back({first, w1});
      if (w2 > 0) out.push_back({second, w2});
      return out;
    } catch (const NearZeroError&) {
    } catch (const DepthExceededError&) {
    }
  }
  throw BoundaryRootError("locate_roots: no admissible split of a box");
}

}  // namespace

WindingResult winding_exact(const ApproximationModel& model, Complex a, const RectRegion& region,
                            const CountOptions& opts) {
  check_region(region);
  const ComplexFunction f = [&](Complex s) { return eval_zetaN(model, s) - a; };
  UnwrapOptions uo = opts.unwrap;
  WindingResult res;
  res.region = region;
  for (int attempt = 0; attempt <= opts.refineRetries; ++attempt) {
    double raw = 0.0;
    for (int k = 0; k < 4; ++k) {
      const Edge e = static_cast<Edge>(k);
      const Segment seg = edge_segment(region, e);
      UnwrapOptions edge_opts = uo;
      const double len = std::abs(seg.to - seg.from);
      edge_opts.initialSegments =
          std::max(uo.initialSegments, static_cast<int>(std::ceil(len / opts.initialSpacing)));
      try {
        const PathSample p = unwrap_arg(f, seg, edge_opts);
        raw += p.total_change();
        res.edgeSamples[k] = p.points.size();
      } catch (const NearZeroError& err) {
        throw EdgeNearZeroError(err, e);
      }
    }
    const double turns = raw / kTwoPi;
    res.raw = raw;
    res.winding = static_cast<int>(std::lround(turns));
    res.residual = std::abs(turns - res.winding);
    if (res.residual < opts.residualLimit && res.winding >= 0) return res;
    uo.maxStep *= 0.5;
    uo.chordTolerance *= 0.5;
  }
  throw DepthExceededError("winding: count not integral after refinement retries");
}

WindingResult count_winding(const ApproximationModel& model, Complex a, const RectRegion& region,
                            const CountOptions& opts) {
  check_region(region);
  return jittered_count(model, a, region, opts, 0u);
}

int winding_count(const ApproximationModel& model, Complex a, const RectRegion& region,
                  const CountOptions& opts) {
  return count_winding(model, a, region, opts).winding;
}

std::vector<LocatedRoot> locate_roots(const ApproximationModel& model, Complex a,
                                      const RectRegion& region, double radius,
                                      const LocateOptions& opts) {
  if (!(radius > 0.0)) throw InvalidArgument("locate_roots: radius must be positive");
  const WindingResult top = count_winding(model, a, region, opts.count);
  std::vector<LocatedRoot> roots;
  std::vector<Box> level;
  if (top.winding > 0) level.push_back({top.region, top.winding});
  while (!level.empty()) {
    std::vector<Box> pending;
    for (const Box& b : level) {
      const double diag = diagonal(b.region);
      const bool certified = diag <= 2.0 * radius && b.winding == 1;
      if (certified || diag <= opts.minBox) {
        const Complex c(0.5 * (b.region.sigmaLeft + b.region.sigmaRight),
                        0.5 * (b.region.tBottom + b.region.tTop));
        roots.push_back({c, 0.5 * diag, b.winding, b.region});
      } else {
        pending.push_back(b);
      }
    }
    std::vector<std::vector<Box>> children(pending.size());
    parallel_for(pending.size(), opts.count.workers,
                 [&](std::size_t i) { children[i] = split_box(model, a, pending[i], opts.count); });
    level.clear();
    for (auto& c : children) level.insert(level.end(), c.begin(), c.end());
  }
  std::sort(roots.begin(), roots.end(), [](const LocatedRoot& x, const LocatedRoot& y) {
    if (x.center.imag() != y.center.imag()) return x.center.imag() < y.center.imag();
    return x.center.real() < y.center.real();
  });
  return roots;
}

ClusterReport cluster_census(const ApproximationModel& model, Complex a, double T, double U,
                             double eps, double sigmaBound, const CountOptions& opts) {
  if (!(U > 0.0) || !(T > 0.0)) throw InvalidArgument("cluster_census: need T > 0 and U > 0");
  if (!(eps > 0.0) || !(sigmaBound > 0.0)) {
    throw InvalidArgument("cluster_census: need eps > 0 and sigmaBound > 0");
  }
  const double c = model.critical_sigma();
  const double inner = std::min(eps, sigmaBound);
  ClusterReport rep;
  rep.epsilon = eps;
  const RectRegion outer{c - sigmaBound, c + sigmaBound, T, T + U};
  const RectRegion band{c - inner, c + inner, T, T + U};
  WindingResult results[2];
  const RectRegion regions[2] = {outer, band};
  parallel_for(2, opts.workers,
               [&](std::size_t i) { results[i] = count_winding(model, a, regions[i], opts); });
  rep.outer = results[0].region;
  rep.band = results[1].region;
  rep.total = results[0].winding;
  rep.within = inner == sigmaBound ? rep.total : results[1].winding;
  rep.outside = rep.total - rep.within;
  return rep;
}

bool strip_predicate(const ApproximationModel& model, Complex a, Complex s) {
  const Complex z = eval_zetaN(model, s);
  if (s.real() < model.critical_sigma()) return std::abs(z - a) > 1.0;
  const auto& coeffs = model.series().coefficients();
  const Complex a1 = coeffs[0];
  if (a != a1) return std::abs(z - a1) < 0.5 * std::abs(a1 - a);
  if (coeffs.size() < 2) return false;
  const Complex a2 = coeffs[1];
  const double log_l2 = model.series().log_exponents()[1];
  const Complex scaled = (z - a) * std::exp(s * log_l2);
  return std::abs(scaled - a2) < 0.5 * std::abs(a2);
}

StripReport strip_check(const ApproximationModel& model, Complex a, double sigma,
                        const std::vector<double>& tGrid) {
  const double c = model.critical_sigma();
  StripReport rep;
  rep.sigma = sigma;
  rep.rightSide = sigma >= c;
  rep.shiftedPredicate = rep.rightSide && a == model.series().coefficients()[0];
  rep.allPass = true;
  for (double t : tGrid) {
    const Complex s(sigma, t);
    StripPoint p{t, eval_zetaN(model, s), strip_predicate(model, a, s)};
    rep.allPass = rep.allPass && p.pass;
    rep.points.push_back(p);
  }
  if (!rep.allPass) return rep;

  const double side = rep.rightSide ? 1.0 : -1.0;
  const double dist = std::abs(sigma - c);
  constexpr double kLattice = 0.25;
  auto grid_passes = [&](double d) {
    for (double t : tGrid) {
      if (!strip_predicate(model, a, Complex(c + side * d, t))) return false;
    }
    return true;
  };
  double minimal = dist;
  for (int k = static_cast<int>(std::floor(dist / kLattice)); k >= 0; --k) {
    const double d = k * kLattice;
    if (d >= dist) continue;
    if (!grid_passes(d)) break;
    minimal = d;
  }
  rep.minimalSigma = c + side * minimal;
  return rep;
}

double calibrate_sigma_bound(const ApproximationModel& model, Complex a, double T, double U,
                             int gridPoints, double maxDistance) {
  if (gridPoints < 2) throw InvalidArgument("calibrate_sigma_bound: need at least 2 grid points");
  std::vector<double> grid(gridPoints);
  for (int k = 0; k < gridPoints; ++k) grid[k] = T + U * k / (gridPoints - 1);
  const double c = model.critical_sigma();
  double worst = 0.0;
  for (double side : {1.0, -1.0}) {
    const StripReport rep = strip_check(model, a, c + side * maxDistance, grid);
    if (!rep.minimalSigma) {
      throw InvalidArgument("calibrate_sigma_bound: strip predicate fails at the maximal distance");
    }
    worst = std::max(worst, std::abs(*rep.minimalSigma - c));
  }
  return 1.5 * std::max(worst, 0.25);
}

}  // namespace zetapprox
