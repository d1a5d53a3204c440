#include "zetapprox/critical_line.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "zetapprox/error.hpp"
#include "zetapprox/parallel.hpp"
#include "zetapprox/special.hpp"

namespace zetapprox {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kChunk = 256;
constexpr int kNearMissDepth = 4;

struct RawSample {
  Complex z;
  /// dz/dt = i F_N'(s).
  Complex dz;
  /// Im log G, continuous in t > 0.
  double raw = 0.0;
  double dtheta = 0.0;
};

RawSample raw_sample(const ApproximationModel& model, double t) {
  const Complex s(model.critical_sigma(), t);
  RawSample r;
  r.z = eval_FN(model.series(), s);
  r.dz = Complex(0.0, 1.0) * eval_FN_derivative(model.series(), s);
  r.raw = log_G(model.fe(), s).imag();
  r.dtheta = arg_G_derivative(model.fe(), model.critical_sigma(), t);
  return r;
}

struct ValueSlope {
  double value = 0.0;
  double slope = 0.0;
};

double Z_value(const RawSample& r, double theta) {
  return 2.0 * (r.z * std::polar(1.0, -0.5 * theta)).real();
}

double Z_slope(const RawSample& r, double theta) {
  const Complex inner = r.dz - Complex(0.0, 0.5 * r.dtheta) * r.z;
  return 2.0 * (inner * std::polar(1.0, -0.5 * theta)).real();
}

using LineFunction = std::function<ValueSlope(double)>;

// Cubic Hermite model on [0, 1] through (va, da h) and (vb, db h). Returns
// +1 if it crosses zero between the grid points, 0 if it only comes close,
// -1 otherwise.
int hermite_dip(double va, double da, double vb, double db, double h) {
  const double c1 = h * da;
  const double c2 = 3.0 * (vb - va) - 2.0 * h * da - h * db;
  const double c3 = 2.0 * (va - vb) + h * da + h * db;
  auto p = [&](double x) { return va + x * (c1 + x * (c2 + x * c3)); };
  double xs[2];
  int n = 0;
  if (std::abs(c3) < 1e-300) {
    if (c2 != 0.0) xs[n++] = -c1 / (2.0 * c2);
  } else {
    const double disc = 4.0 * c2 * c2 - 12.0 * c3 * c1;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      xs[n++] = (-2.0 * c2 + r) / (6.0 * c3);
      xs[n++] = (-2.0 * c2 - r) / (6.0 * c3);
    }
  }
  int verdict = -1;
  const double scale = std::max(std::abs(va), std::abs(vb));
  for (int k = 0; k < n; ++k) {
    if (!(xs[k] > 0.0 && xs[k] < 1.0)) continue;
    const double v = p(xs[k]);
    if (v * va <= 0.0) return 1;
    if (std::abs(v) < 0.1 * scale) verdict = 0;
  }
  return verdict;
}

double bisect_root(const LineFunction& f, double lo, double flo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid).value;
    if (!std::isfinite(fm)) throw StepFloorError("line scan: non-finite value while refining");
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void interval_roots(const LineFunction& f, double a, ValueSlope fa, double b, ValueSlope fb,
                    int depth, const LineScanOptions& opts, std::vector<double>& out) {
  if (fa.value == 0.0) {
    out.push_back(a);
    return;
  }
  if ((fa.value < 0.0) != (fb.value < 0.0) && fb.value != 0.0) {
    out.push_back(bisect_root(f, a, fa.value, b, opts.rootTol));
    return;
  }
  if (fb.value == 0.0) return;
  const int dip = hermite_dip(fa.value, fa.slope, fb.value, fb.slope, b - a);
  if (dip < 0 || (dip == 0 && depth >= kNearMissDepth)) return;
  if (depth >= opts.maxSubdivision) {
    throw StepFloorError("line scan: close pair of roots not separated at the step floor");
  }
  const double m = 0.5 * (a + b);
  const ValueSlope fm = f(m);
  interval_roots(f, a, fa, m, fm, depth + 1, opts, out);
  interval_roots(f, m, fm, b, fb, depth + 1, opts, out);
}

struct Grid {
  std::vector<double> t;
  std::vector<RawSample> raw;
  double offset = 0.0;
};

Grid sample_grid(const ApproximationModel& model, double T, double U, const LineScanOptions& opts) {
  if (!(T > 0.0) || !(U > 0.0)) throw InvalidArgument("line scan: need T > 0 and U > 0");
  if (!(T + U > 1.0)) throw InvalidArgument("line scan: need T + U > 1");
  if (opts.samplesPerGap < 1) throw InvalidArgument("line scan: samplesPerGap must be >= 1");
  const double h = scan_step(model, T, U, opts.samplesPerGap);
  const auto n = static_cast<std::size_t>(std::ceil(U / h));
  Grid g;
  g.t.resize(n + 1);
  g.raw.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g.t[k] = k == n ? T + U : T + U * static_cast<double>(k) / n;
  const std::size_t chunks = (n + kChunk) / kChunk;
  parallel_for(chunks, opts.workers, [&](std::size_t c) {
    const std::size_t end = std::min(n + 1, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) g.raw[k] = raw_sample(model, g.t[k]);
  });
  g.offset = std::remainder(g.raw[0].raw, kTwoPi) - g.raw[0].raw;
  return g;
}

std::vector<LinePoint> line_samples(const ApproximationModel& model, const Grid& g) {
  const double tol = line_zero_tolerance(model.series(), model.critical_sigma());
  std::vector<LinePoint> out(g.t.size());
  for (std::size_t k = 0; k < g.t.size(); ++k) {
    LinePoint& p = out[k];
    const RawSample& r = g.raw[k];
    p.t = g.t[k];
    p.z = r.z;
    p.theta = r.raw + g.offset;
    if (std::abs(r.z) >= tol) {
      const double principal = std::arg(r.z);
      p.phi = (k > 0 && out[k - 1].phi)
                  ? *out[k - 1].phi + std::remainder(principal - *out[k - 1].phi, kTwoPi)
                  : principal;
    }
    p.Z = Z_value(r, p.theta);
  }
  return out;
}

std::vector<double> scan_roots(const Grid& g, const LineFunction& f,
                               const std::function<ValueSlope(std::size_t)>& at,
                               const LineScanOptions& opts) {
  const std::size_t n = g.t.size() - 1;
  std::vector<ValueSlope> vals(n + 1);
  for (std::size_t k = 0; k <= n; ++k) vals[k] = at(k);
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> found(chunks);
  parallel_for(chunks, opts.workers, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * kChunk);
    for (std::size_t k = c * kChunk; k < end; ++k) {
      interval_roots(f, g.t[k], vals[k], g.t[k + 1], vals[k + 1], 0, opts, found[c]);
    }
  });
  std::vector<double> roots;
  for (auto& part : found) roots.insert(roots.end(), part.begin(), part.end());
  if (vals[n].value == 0.0) roots.push_back(g.t[n]);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

void require_real(const ApproximationModel& model) {
  if (!model.real_coefficients()) {
    throw NonRealCoefficientsError("line scan: the model has non-real coefficients");
  }
}

}  // namespace

double scan_step(const ApproximationModel& model, double T, double U, int samplesPerGap) {
  const double gap = std::numbers::pi / (model.fe().A() * std::log(T + U));
  return gap / samplesPerGap;
}

double line_Z_derivative(const ApproximationModel& model, const LinePoint& p) {
  return Z_slope(raw_sample(model, p.t), p.theta);
}

LineScanResult count_line_zeros(const ApproximationModel& model, double T, double U,
                                const LineScanOptions& opts) {
  require_real(model);
  const Grid g = sample_grid(model, T, U, opts);
  LineScanResult res;
  res.T = T;
  res.U = U;
  res.samples = line_samples(model, g);
  const LineFunction f = [&](double t) {
    const RawSample r = raw_sample(model, t);
    const double theta = r.raw + g.offset;
    return ValueSlope{Z_value(r, theta), Z_slope(r, theta)};
  };
  res.zeroOrdinates = scan_roots(
      g, f,
      [&](std::size_t k) {
        const double theta = g.raw[k].raw + g.offset;
        return ValueSlope{Z_value(g.raw[k], theta), Z_slope(g.raw[k], theta)};
      },
      opts);
  return res;
}

LineScanResult avalue_line_census(const ApproximationModel& model, Complex a, double T, double U,
                                  const LineScanOptions& opts) {
  require_real(model);
  if (a == Complex(0.0)) throw InvalidArgument("avalue_line_census: a must be non-zero");
  const Grid g = sample_grid(model, T, U, opts);
  LineScanResult res;
  res.T = T;
  res.U = U;
  res.a = a;
  res.samples = line_samples(model, g);
  const double alpha = std::arg(a);
  const double mod = std::abs(a);
  auto P = [&](const RawSample& r) {
    return ValueSlope{2.0 * proj(alpha, r.z) - mod, 2.0 * proj(alpha, r.dz)};
  };
  const LineFunction f = [&](double t) { return P(raw_sample(model, t)); };
  res.candidates = scan_roots(g, f, [&](std::size_t k) { return P(g.raw[k]); }, opts);
  res.candidateResiduals.resize(res.candidates.size());
  parallel_for(res.candidates.size(), opts.workers, [&](std::size_t k) {
    const Complex s(model.critical_sigma(), res.candidates[k]);
    res.candidateResiduals[k] = std::abs(eval_zetaN(model, s) - a);
  });
  for (std::size_t k = 0; k < res.candidates.size(); ++k) {
    if (res.candidateResiduals[k] <= opts.hitTol) res.hits.push_back(res.candidates[k]);
  }
  return res;
}

std::vector<SimplicityReport> simplicity_check(const ApproximationModel& model,
                                               const std::vector<double>& tList,
                                               double slopeFloor) {
  const double sigma = model.critical_sigma();
  const double scale = line_zero_tolerance(model.series(), sigma) / 1e-12;
  std::vector<SimplicityReport> out;
  out.reserve(tList.size());
  for (double t : tList) {
    const LinePoint p = line_point(model, t);
    SimplicityReport r;
    r.t = t;
    r.argGDerivative = arg_G_derivative(model.fe(), sigma, t);
    r.slope = std::abs(line_Z_derivative(model, p));
    r.relativeZ = std::abs(p.Z) / scale;
    const bool phase_simple = r.argGDerivative < 0.0;
    const bool slope_simple = r.relativeZ <= 1e-8 && r.slope > slopeFloor;
    r.verdict = phase_simple || slope_simple ? Simplicity::Simple : Simplicity::Inconclusive;
    out.push_back(r);
  }
  return out;
}

}  // namespace zetapprox
