#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "zetapprox/error.hpp"
#include "zetapprox/model.hpp"

namespace zetapprox {

namespace detail {

// B_2, B_4, ..., B_26.
inline constexpr long double kBernoulli[] = {
    1.0L / 6.0L,          -1.0L / 30.0L,     1.0L / 42.0L,      -1.0L / 30.0L,
    5.0L / 66.0L,         -691.0L / 2730.0L, 7.0L / 6.0L,       -3617.0L / 510.0L,
    43867.0L / 798.0L,    -174611.0L / 330.0L, 854513.0L / 138.0L, -236364091.0L / 2730.0L,
    8553103.0L / 6.0L};

inline constexpr int kStirlingTerms = 12;
inline constexpr double kStirlingRadius = 12.0;

template <typename Real>
bool is_nonpositive_integer(const std::complex<Real>& z) {
  return z.imag() == Real(0) && z.real() <= Real(0) && std::floor(z.real()) == z.real();
}

// |arg z| <= 3 pi / 4 with |z| >= radius: the Stirling tail is still tiny.
template <typename Real>
bool in_stirling_sector(const std::complex<Real>& z) {
  return std::abs(z) >= Real(kStirlingRadius) &&
         (z.real() >= Real(0) || std::abs(z.imag()) >= -z.real());
}

template <typename Real>
std::complex<Real> stirling_log_gamma(const std::complex<Real>& z) {
  using C = std::complex<Real>;
  const Real half_log_2pi = Real(0.5) * std::log(Real(2) * std::numbers::pi_v<Real>);
  C acc = (z - Real(0.5)) * std::log(z) - z + half_log_2pi;
  const C inv = Real(1) / z;
  const C inv2 = inv * inv;
  C power = inv;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    const Real b = static_cast<Real>(kBernoulli[k - 1]);
    acc += power * (b / Real(2 * k * (2 * k - 1)));
    power *= inv2;
  }
  return acc;
}

template <typename Real>
std::complex<Real> stirling_digamma(const std::complex<Real>& z) {
  using C = std::complex<Real>;
  const C inv = Real(1) / z;
  const C inv2 = inv * inv;
  C acc = std::log(z) - Real(0.5) * inv;
  C power = inv2;
  for (int k = 1; k <= kStirlingTerms; ++k) {
    const Real b = static_cast<Real>(kBernoulli[k - 1]);
    acc -= power * (b / Real(2 * k));
    power *= inv2;
  }
  return acc;
}

// log sin(pi z) for Im z > 0, on the branch continuous in the upper half plane
// that matches the principal log-gamma reflection identity.
template <typename Real>
std::complex<Real> log_sin_pi_upper(const std::complex<Real>& z) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  const C i(0, 1);
  const C w = std::exp(Real(2) * pi * i * z);
  return i * (pi / Real(2)) - std::log(Real(2)) - i * pi * z + std::log(Real(1) - w);
}

// pi cot(pi z) without overflow for large |Im z|.
template <typename Real>
std::complex<Real> pi_cot_pi(const std::complex<Real>& z) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  if (z.imag() == Real(0)) {
    return C(pi * std::cos(pi * z.real()) / std::sin(pi * z.real()), Real(0));
  }
  if (z.imag() < Real(0)) {
    return std::conj(pi_cot_pi(std::conj(z)));
  }
  const C i(0, 1);
  const C w = std::exp(Real(2) * pi * i * z);
  return pi * i * (w + Real(1)) / (w - Real(1));
}

}  // namespace detail

/// Principal branch of log Gamma(z) on C \ (-inf, 0].
///
/// Stirling series with Bernoulli terms up to B_24 once |z| >= 12 inside
/// |arg z| <= 3pi/4; otherwise the recurrence shifts z up, or, for
/// Re z < 1/2, the reflection formula maps to Re z > 1/2 with the branch of
/// log sin(pi z) chosen so the result stays principal.
template <typename Real>
std::complex<Real> log_gamma(std::complex<Real> z) {
  using C = std::complex<Real>;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma: non-finite argument");
  }
  if (detail::is_nonpositive_integer(z)) {
    throw PoleError("log_gamma: pole at non-positive integer");
  }
  if (detail::in_stirling_sector(z)) {
    return detail::stirling_log_gamma(z);
  }
  if (z.real() < Real(0.5)) {
    const Real log_pi = std::log(std::numbers::pi_v<Real>);
    if (z.imag() == Real(0)) {
      if (z.real() < Real(0)) {
        throw DomainError("log_gamma: negative real axis is the branch cut");
      }
      const Real x = z.real();
      return C(log_pi - std::log(std::sin(std::numbers::pi_v<Real> * x)), Real(0)) -
             log_gamma(C(Real(1) - x, Real(0)));
    }
    if (z.imag() < Real(0)) {
      return std::conj(log_gamma(std::conj(z)));
    }
    return log_pi - detail::log_sin_pi_upper(z) - log_gamma(Real(1) - z);
  }
  C shift(0);
  while (std::abs(z) < Real(detail::kStirlingRadius)) {
    shift += std::log(z);
    z += Real(1);
  }
  return detail::stirling_log_gamma(z) - shift;
}

/// psi(z) = Gamma'(z) / Gamma(z).
template <typename Real>
std::complex<Real> digamma(std::complex<Real> z) {
  using C = std::complex<Real>;
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("digamma: non-finite argument");
  }
  if (detail::is_nonpositive_integer(z)) {
    throw PoleError("digamma: pole at non-positive integer");
  }
  if (detail::in_stirling_sector(z)) {
    return detail::stirling_digamma(z);
  }
  if (z.real() < Real(0.5)) {
    return digamma(Real(1) - z) - detail::pi_cot_pi(z);
  }
  C shift(0);
  while (std::abs(z) < Real(detail::kStirlingRadius)) {
    shift += Real(1) / z;
    z += Real(1);
  }
  return detail::stirling_digamma(z) - shift;
}

/// log G(s) = (2s - delta) log lambda + sum_i [log Gamma(alpha_i (delta - s) + beta_i)
///                                            - log Gamma(alpha_i s + beta_i)].
/// For Im s != 0 every Gamma argument stays off the cut, so the imaginary
/// part is a continuous arg G along any path avoiding the real axis.
Complex log_G(const FunctionalEquation& fe, Complex s);

/// G(s) = lambda^{2s - delta} Omega(delta - s) / Omega(s).
Complex eval_G(const FunctionalEquation& fe, Complex s);

/// d/ds log G(s) = 2 log lambda - sum_i alpha_i [psi(alpha_i (delta - s) + beta_i)
///                                              + psi(alpha_i s + beta_i)].
Complex log_G_derivative(const FunctionalEquation& fe, Complex s);

/// d/dt arg G(sigma + i t), assembled from digamma.
double arg_G_derivative(const FunctionalEquation& fe, double sigma, double t);

/// Smallest t on the critical line beyond which arg_G_derivative stays
/// negative, judged on a uniform grid of the given spacing over (0, tMax] and
/// refined by bisection. Returns tMax when the derivative is not negative at
/// tMax.
double monotone_onset(const FunctionalEquation& fe, double tMax = 1e3, double spacing = 0.05);

/// Directed straight segment in the s-plane.
struct Segment {
  Complex from;
  Complex to;
};

/// Samples of f along a path with a continuous branch of arg f.
struct PathSample {
  std::vector<Complex> points;
  std::vector<Complex> values;
  std::vector<double> unwrappedArg;

  double total_change() const {
    return unwrappedArg.empty() ? 0.0 : unwrappedArg.back() - unwrappedArg.front();
  }
};

struct UnwrapOptions {
  /// Largest accepted phase step between consecutive samples.
  double maxStep = std::numbers::pi / 2.0;
  /// Near-zero threshold relative to the largest |f| seen within the same
  /// initial segment of the path.
  double nearZeroRel = 1e-12;
  int maxDepth = 40;
  int initialSegments = 8;
  /// Accept an interval only when f at its midpoint deviates from the chord
  /// by at most this fraction of the smallest |f| involved.
  double chordTolerance = 0.25;
};

using ComplexFunction = std::function<Complex(Complex)>;

/// Adaptive bisection along the segment until every consecutive phase step is
/// below opts.maxStep and f is locally close to linear.
///
/// Throws NearZeroError when |f| < nearZeroRel times the local scale at an
/// accepted sample or when refinement stalls next to a vanishingly small |f|, and
/// DepthExceededError when refinement passes opts.maxDepth levels elsewhere.
PathSample unwrap_arg(const ComplexFunction& f, Segment path, const UnwrapOptions& opts = {});

}  // namespace zetapprox
