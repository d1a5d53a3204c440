#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zetapprox/evaluator.hpp"
#include "zetapprox/special.hpp"

using namespace zetapprox;

namespace {

constexpr double kEuler = 0.57721566490153286061;

// Reference values from tools/oracles/special_values.py (30-digit
// recurrence-shifted Stirling sums, agreeing with mpmath).
struct Reference {
  Complex z;
  Complex value;
};

const Reference kLogGamma[] = {
    {{1.0, 1.0}, {-0.65092319930185633889, -0.30164032046753319789}},
    {{0.25, 30.0}, {-47.055241933994316021, 71.643569596014939817}},
    {{-2.5, 3.0}, {-7.4782360420503149704, -5.7261042719103868422}},
    {{3.0, -7.0}, {-5.1625232203418129939, -10.116252238416788574}},
};

const Reference kDigamma[] = {
    {{10.0, 10.0}, {2.6241584749432888427, 0.81081482956810689799}},
    {{0.25, 25.0}, {3.2188591570346212782, 1.5807973272955080093}},
    {{-3.5, 0.5}, {1.3965080219699073014, 2.7575825969005915157}},
};

FunctionalEquation two_factor_fe() {
  return FunctionalEquation(0.8, 2.0, {GammaFactor{1.0, 0.5}, GammaFactor{0.5, 0.25}});
}

}  // namespace

TEST_CASE("log_gamma classical values") {
  CHECK(std::abs(log_gamma(Complex(1.0))) < 1e-15);
  CHECK(std::abs(log_gamma(Complex(2.0))) < 1e-15);
  CHECK(std::abs(log_gamma(Complex(0.5)) - 0.5 * std::log(std::numbers::pi)) < 1e-14);
  CHECK(std::abs(log_gamma(Complex(10.0)) - std::log(362880.0)) < 1e-13);
}

TEST_CASE("log_gamma against high-precision references") {
  for (const auto& r : kLogGamma) {
    CAPTURE(r.z);
    CHECK(std::abs(log_gamma(r.z) - r.value) < 1e-12);
  }
}

TEST_CASE("log_gamma errors") {
  CHECK_THROWS_AS(log_gamma(Complex(0.0)), PoleError);
  CHECK_THROWS_AS(log_gamma(Complex(-3.0)), PoleError);
  CHECK_THROWS_AS(log_gamma(Complex(-2.5)), DomainError);
  CHECK_NOTHROW(log_gamma(Complex(-2.5, 1e-3)));
}

TEST_CASE("log_gamma recurrence residual on 1 <= |z| <= 100") {
  double worst = 0.0;
  for (int ir = 0; ir <= 40; ++ir) {
    const double r = std::pow(100.0, ir / 40.0);
    for (int ia = 0; ia <= 36; ++ia) {
      const double ang = -0.95 * std::numbers::pi + 1.9 * std::numbers::pi * ia / 36.0;
      const Complex z = std::polar(r, ang);
      const Complex resid = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
      worst = std::max(worst, std::abs(resid));
    }
  }
  CHECK(worst <= 1e-11);
}

TEST_CASE("log_gamma is continuous across the reflection switch") {
  for (double y : {0.1, 2.0, 20.0}) {
    const Complex left = log_gamma(Complex(0.5 - 1e-12, y));
    const Complex right = log_gamma(Complex(0.5 + 1e-12, y));
    CHECK(std::abs(left - right) < 1e-10);
  }
}

TEST_CASE("digamma values") {
  CHECK(std::abs(digamma(Complex(1.0)) + kEuler) < 1e-14);
  CHECK(std::abs(digamma(Complex(2.0)) - (1.0 - kEuler)) < 1e-14);
  for (const auto& r : kDigamma) {
    CAPTURE(r.z);
    CHECK(std::abs(digamma(r.z) - r.value) < 1e-10);
  }
  CHECK_THROWS_AS(digamma(Complex(-2.0)), PoleError);
}

TEST_CASE("digamma matches a difference quotient of log_gamma") {
  const Complex z(3.3, 12.0);
  const double h = 1e-5;
  const Complex fd = (log_gamma(z + h) - log_gamma(z - h)) / (2.0 * h);
  CHECK(std::abs(fd - digamma(z)) < 1e-8);
}

TEST_CASE("eval_G on the zeta preset") {
  const auto fe = make_zeta_preset(3).fe();
  CHECK(std::abs(std::abs(eval_G(fe, Complex(0.5, 30.0))) - 1.0) < 1e-10);

  const Complex s(0.3, 25.0);
  const Complex expected = oracle::chi(s);
  CHECK(std::abs(eval_G(fe, s) - expected) <= 1e-10 * std::abs(expected));
}

TEST_CASE("eval_G reflection and conjugation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dsig(-3.0, 3.0);
  std::uniform_real_distribution<double> dt(10.0, 1000.0);
  for (const auto& fe : {make_zeta_preset(3).fe(), two_factor_fe()}) {
    for (int k = 0; k < 200; ++k) {
      const Complex s(fe.delta() / 2.0 + dsig(rng), dt(rng));
      const Complex g = eval_G(fe, s);
      CHECK(std::abs(g * eval_G(fe, fe.delta() - s) - 1.0) <= 1e-9);
      const Complex gc = eval_G(fe, std::conj(s));
      CHECK(std::abs(gc - std::conj(g)) <= 1e-10 * std::abs(g));
    }
  }
}

TEST_CASE("eval_G pole") {
  const auto fe = make_zeta_preset(3).fe();
  // s = 0 puts Gamma(s/2) on its pole.
  CHECK_THROWS_AS(eval_G(fe, Complex(0.0, 0.0)), PoleError);
}

TEST_CASE("arg_G_derivative") {
  const auto fe = make_zeta_preset(3).fe();
  const double d = arg_G_derivative(fe, 0.5, 50.0);
  CHECK(d < 0.0);

  const double h = 1e-3;
  const double fd =
      std::arg(eval_G(fe, Complex(0.5, 50.0 + h)) / eval_G(fe, Complex(0.5, 50.0 - h))) /
      (2.0 * h);
  CHECK(std::abs(fd - d) <= 1e-6 * std::abs(d));

  const FunctionalEquation doubled(2.0 * fe.lambda(), fe.delta(), fe.omega());
  CHECK(arg_G_derivative(doubled, 0.5, 50.0) - d == doctest::Approx(2.0 * std::log(2.0)));

  // Below t ~ 2 pi the Gamma phase has not yet overtaken log pi.
  CHECK(arg_G_derivative(fe, 0.5, 0.5) > 0.0);
}

TEST_CASE("unwrap_arg simple paths") {
  const auto c = unwrap_arg([](Complex) { return Complex(5.0); }, {{0.0, 0.0}, {3.0, 7.0}});
  CHECK(c.total_change() == 0.0);

  const double two_pi = 2.0 * std::numbers::pi;
  const auto lin = unwrap_arg([](Complex s) { return std::exp(3.0 * s); },
                              {{0.0, 0.0}, {0.0, two_pi}});
  CHECK(lin.total_change() == doctest::Approx(3.0 * two_pi).epsilon(1e-12));

  const auto real_axis = unwrap_arg([](Complex s) { return std::exp(Complex(0, 3) * s); },
                                    {{0.0, 0.0}, {two_pi, 0.0}});
  CHECK(real_axis.total_change() == doctest::Approx(3.0 * two_pi).epsilon(1e-12));
}

TEST_CASE("unwrap_arg of G matches the Riemann-Siegel theta phase") {
  const auto fe = make_zeta_preset(3).fe();
  const auto path =
      unwrap_arg([&](Complex s) { return eval_G(fe, s); }, {{0.5, 30.0}, {0.5, 40.0}});
  const double expected =
      -2.0 * (oracle::riemann_siegel_theta(40.0) - oracle::riemann_siegel_theta(30.0));
  CHECK(std::abs(path.total_change() - expected) < 1e-9);
}

TEST_CASE("unwrap_arg flags a root on the path") {
  const Complex root(0.5, 35.0);
  CHECK_THROWS_AS(
      unwrap_arg([&](Complex s) { return s - root; }, {{0.5, 30.0}, {0.5, 40.0}}),
      NearZeroError);
  // A root just beside the path is resolved, not flagged.
  const auto near = unwrap_arg([&](Complex s) { return s - root; },
                               {{0.5 + 1e-7, 30.0}, {0.5 + 1e-7, 40.0}});
  CHECK(near.total_change() == doctest::Approx(std::numbers::pi).epsilon(1e-6));
}

TEST_CASE("unwrap_arg branch safety on random Dirichlet polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int N = 3 + trial % 5;
    Eigen::VectorXcd a(N);
    Eigen::VectorXd lam(N);
    for (int n = 0; n < N; ++n) {
      a[n] = Complex(u(rng), u(rng));
      lam[n] = n + 1;
    }
    const SeriesSpec series(a, lam, Envelope{2.0, 1.0});
    const Complex from(u(rng) * 2.0, 10.0 + 5.0 * u(rng));
    const Complex to(u(rng) * 2.0, 40.0 + 5.0 * u(rng));
    PathSample p;
    try {
      p = unwrap_arg([&](Complex s) { return eval_FN(series, s); }, {from, to});
    } catch (const NearZeroError&) {
      continue;
    }
    for (std::size_t k = 0; k + 1 < p.unwrappedArg.size(); ++k) {
      CHECK(std::abs(p.unwrappedArg[k + 1] - p.unwrappedArg[k]) < std::numbers::pi);
    }
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      const Complex unit = p.values[k] / std::abs(p.values[k]);
      CHECK(std::abs(std::polar(1.0, p.unwrappedArg[k]) - unit) < 1e-9);
    }
  }
}

TEST_CASE("monotone_onset") {
  const auto fe = make_zeta_preset(3).fe();
  // arg chi'(1/2 + it) = -log(t / 2 pi) + O(1/t^2) vanishes near t = 2 pi.
  const double t0 = monotone_onset(fe);
  CHECK(t0 > 6.0);
  CHECK(t0 < 7.0);
  CHECK(arg_G_derivative(fe, 0.5, t0 * (1.0 + 1e-9)) < 0.0);
  CHECK(arg_G_derivative(fe, 0.5, t0 * (1.0 - 1e-6)) >= 0.0);
  for (double t = t0 + 0.01; t < 1e3; t *= 1.1) CHECK(arg_G_derivative(fe, 0.5, t) < 0.0);
  CHECK_THROWS_AS(monotone_onset(fe, -1.0), InvalidArgument);
}
