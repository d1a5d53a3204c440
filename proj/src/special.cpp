#include "zetapprox/special.hpp"

#include <algorithm>
#include <cmath>

namespace zetapprox {

Complex log_G(const FunctionalEquation& fe, Complex s) {
  const double delta = fe.delta();
  Complex acc = (2.0 * s - delta) * std::log(fe.lambda());
  const Complex reflected = delta - s;
  for (const auto& g : fe.omega()) {
    acc += log_gamma(g.alpha * reflected + g.beta) - log_gamma(g.alpha * s + g.beta);
  }
  return acc;
}

Complex eval_G(const FunctionalEquation& fe, Complex s) { return std::exp(log_G(fe, s)); }

Complex log_G_derivative(const FunctionalEquation& fe, Complex s) {
  Complex acc = 2.0 * std::log(fe.lambda());
  const Complex reflected = fe.delta() - s;
  for (const auto& g : fe.omega()) {
    acc -= g.alpha * (digamma(g.alpha * reflected + g.beta) + digamma(g.alpha * s + g.beta));
  }
  return acc;
}

double arg_G_derivative(const FunctionalEquation& fe, double sigma, double t) {
  // d/dt = i d/ds, and Im(i w) = Re(w).
  return log_G_derivative(fe, Complex(sigma, t)).real();
}

double monotone_onset(const FunctionalEquation& fe, double tMax, double spacing) {
  if (!(tMax > 0.0) || !(spacing > 0.0)) {
    throw InvalidArgument("monotone_onset: tMax and spacing must be positive");
  }
  const double c = fe.delta() / 2.0;
  const auto d = [&](double t) { return arg_G_derivative(fe, c, t); };
  if (!(d(tMax) < 0.0)) return tMax;
  double hi = tMax;
  double lo = hi;
  for (;;) {
    lo = std::max(hi - spacing, spacing * 1e-3);
    if (!(d(lo) < 0.0)) break;
    if (lo <= spacing * 1e-3) return lo;
    hi = lo;
  }
  for (int k = 0; k < 60 && hi - lo > 1e-12 * hi; ++k) {
    const double mid = 0.5 * (lo + hi);
    (d(mid) < 0.0 ? hi : lo) = mid;
  }
  return hi;
}

namespace {

class Unwrapper {
 public:
  Unwrapper(const ComplexFunction& f, Segment path, const UnwrapOptions& opts)
      : f_(f), path_(path), opts_(opts) {}

  PathSample run() {
    const int M = std::max(1, opts_.initialSegments);
    double ua = 0.0;
    Complex fa = eval(ua);
    push(point(ua), fa, 0.0, true);
    for (int k = 1; k <= M; ++k) {
      const double ub = static_cast<double>(k) / M;
      const Complex fb = eval(ub);
      // The near-zero scale is local to the coarse interval so that paths
      // along which |f| spans many decades are not misjudged.
      const std::size_t first = out_.values.size() - 1;
      local_max_ = std::max(std::abs(fa), std::abs(fb));
      refine(ua, fa, ub, fb, 0);
      const double threshold = opts_.nearZeroRel * local_max_;
      for (std::size_t j = first; j < out_.values.size(); ++j) {
        if (std::abs(out_.values[j]) < threshold) {
          throw NearZeroError("unwrap_arg: |f| below near-zero tolerance on path",
                              out_.points[j]);
        }
      }
      ua = ub;
      fa = fb;
    }
    return std::move(out_);
  }

 private:
  Complex point(double u) const {
    if (u == 1.0) return path_.to;
    return path_.from + u * (path_.to - path_.from);
  }

  Complex eval(double u) {
    const Complex s = point(u);
    const Complex v = f_(s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DomainError("unwrap_arg: non-finite function value");
    }
    if (v == Complex(0.0)) {
      throw NearZeroError("unwrap_arg: exact zero on path", s);
    }
    local_max_ = std::max(local_max_, std::abs(v));
    return v;
  }

  void push(Complex s, Complex v, double step, bool first = false) {
    out_.points.push_back(s);
    out_.values.push_back(v);
    out_.unwrappedArg.push_back(first ? std::arg(v) : out_.unwrappedArg.back() + step);
  }

  void refine(double ua, Complex fa, double ub, Complex fb, int depth) {
    const double um = 0.5 * (ua + ub);
    const Complex fm = eval(um);
    const double d1 = std::arg(fm * std::conj(fa));
    const double d2 = std::arg(fb * std::conj(fm));
    const double min_abs = std::min({std::abs(fa), std::abs(fb), std::abs(fm)});
    const double chord = std::abs(fm - 0.5 * (fa + fb));
    const bool ok = std::abs(d1) < opts_.maxStep && std::abs(d2) < opts_.maxStep &&
                    chord <= opts_.chordTolerance * min_abs;
    if (ok) {
      push(point(um), fm, d1);
      push(point(ub), fb, d2);
      return;
    }
    if (depth >= opts_.maxDepth) {
      if (min_abs < 1e-6 * local_max_) {
        throw NearZeroError("unwrap_arg: refinement stalled next to a root", point(um));
      }
      throw DepthExceededError("unwrap_arg: refinement depth exceeded");
    }
    refine(ua, fa, um, fm, depth + 1);
    refine(um, fm, ub, fb, depth + 1);
  }

  const ComplexFunction& f_;
  Segment path_;
  const UnwrapOptions& opts_;
  PathSample out_;
  double local_max_ = 0.0;
};

}  // namespace

PathSample unwrap_arg(const ComplexFunction& f, Segment path, const UnwrapOptions& opts) {
  return Unwrapper(f, path, opts).run();
}

}  // namespace zetapprox
