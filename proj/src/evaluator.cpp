#include "zetapprox/evaluator.hpp"

#include <cmath>
#include <numbers>

#include "zetapprox/error.hpp"
#include "zetapprox/special.hpp"

namespace zetapprox {

Complex eval_FN(const SeriesSpec& series, Complex s) {
  const auto& a = series.coefficients();
  const auto& log_lam = series.log_exponents();
  Complex acc(0.0);
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    acc += a[n] * std::exp(-s * log_lam[n]);
  }
  return acc;
}

Complex eval_FN_derivative(const SeriesSpec& series, Complex s) {
  const auto& a = series.coefficients();
  const auto& log_lam = series.log_exponents();
  Complex acc(0.0);
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    acc -= a[n] * log_lam[n] * std::exp(-s * log_lam[n]);
  }
  return acc;
}

Complex eval_zetaN(const ApproximationModel& model, Complex s) {
  const Complex reflected = model.fe().delta() - s;
  return eval_FN(model.series(), s) + eval_G(model.fe(), s) * eval_FN(model.series(), reflected);
}

Complex eval_zetaN_derivative(const ApproximationModel& model, Complex s) {
  const auto& series = model.series();
  const Complex reflected = model.fe().delta() - s;
  const Complex G = eval_G(model.fe(), s);
  const Complex dlogG = log_G_derivative(model.fe(), s);
  return eval_FN_derivative(series, s) +
         G * (dlogG * eval_FN(series, reflected) - eval_FN_derivative(series, reflected));
}

double line_zero_tolerance(const SeriesSpec& series, double sigma) {
  const auto scale =
      (series.coefficients().array().abs() * (-sigma * series.log_exponents().array()).exp())
          .sum();
  return 1e-12 * scale;
}

LinePoint line_point(const ApproximationModel& model, double t,
                     const std::optional<LinePoint>& prev) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double sigma = model.critical_sigma();
  LinePoint p;
  p.t = t;
  p.z = eval_FN(model.series(), Complex(sigma, t));

  const double raw = log_G(model.fe(), Complex(sigma, t)).imag();
  if (prev) {
    const double prev_raw = log_G(model.fe(), Complex(sigma, prev->t)).imag();
    const double turns = std::round((prev->theta - prev_raw) / two_pi);
    p.theta = raw + two_pi * turns;
    if (std::abs(p.theta - prev->theta) >= std::numbers::pi) {
      throw BranchError("line_point: theta moved by pi or more since the previous sample");
    }
  } else {
    p.theta = std::remainder(raw, two_pi);
  }

  if (std::abs(p.z) >= line_zero_tolerance(model.series(), sigma)) {
    const double principal = std::arg(p.z);
    if (prev && prev->phi) {
      p.phi = *prev->phi + std::remainder(principal - *prev->phi, two_pi);
    } else {
      p.phi = principal;
    }
  }
  p.Z = 2.0 * (p.z * std::polar(1.0, -0.5 * p.theta)).real();
  return p;
}

Complex rotated_line_value(const ApproximationModel& model, const LinePoint& p) {
  const Complex s(model.critical_sigma(), p.t);
  return std::polar(1.0, -0.5 * p.theta) * eval_zetaN(model, s);
}

}  // namespace zetapprox
