#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "zetapprox/counting.hpp"
#include "zetapprox/critical_line.hpp"
#include "zetapprox/special.hpp"

using namespace zetapprox;

namespace {

ApproximationModel scaled(const ApproximationModel& m, double c) {
  const auto& s = m.series();
  return ApproximationModel(SeriesSpec(c * s.coefficients(), s.exponents(), s.envelope()), m.fe(),
                            m.sigma0());
}

}  // namespace

TEST_CASE("N = 1: every strip zero is a sign change of Z") {
  const auto m = make_zeta_preset(1);
  const auto scan = count_line_zeros(m, 10.0, 90.0);
  const int strip = winding_count(m, 0.0, {-3.0, 4.0, 10.0, 100.0});
  CHECK(static_cast<int>(scan.zeroOrdinates.size()) == strip);
  CHECK(strip > 20);
}

TEST_CASE("zero ordinates are increasing and bracketed") {
  const auto m = make_zeta_preset(3);
  const auto scan = count_line_zeros(m, 300.0, 40.0);
  REQUIRE(scan.zeroOrdinates.size() > 10);
  CHECK(std::is_sorted(scan.zeroOrdinates.begin(), scan.zeroOrdinates.end()));
  CHECK(std::adjacent_find(scan.zeroOrdinates.begin(), scan.zeroOrdinates.end()) ==
        scan.zeroOrdinates.end());
  for (double g : scan.zeroOrdinates) {
    const auto base = *std::prev(std::upper_bound(
        scan.samples.begin(), scan.samples.end(), g,
        [](double t, const LinePoint& p) { return t < p.t; }));
    const auto below = line_point(m, g - 1e-8, base);
    const auto above = line_point(m, g + 1e-8, base);
    CHECK(below.Z * above.Z <= 0.0);
  }
  const int strip = winding_count(m, 0.0, {-3.0, 4.0, 300.0, 340.0});
  CHECK(static_cast<int>(scan.zeroOrdinates.size()) <= strip);
}

TEST_CASE("positive scaling leaves zero ordinates and candidates unchanged") {
  const auto m = make_zeta_preset(3);
  const auto m2 = scaled(m, 2.0);
  const auto x = count_line_zeros(m, 500.0, 30.0);
  const auto y = count_line_zeros(m2, 500.0, 30.0);
  REQUIRE(x.zeroOrdinates.size() == y.zeroOrdinates.size());
  for (std::size_t k = 0; k < x.zeroOrdinates.size(); ++k) {
    CHECK(std::abs(x.zeroOrdinates[k] - y.zeroOrdinates[k]) <= 2e-9);
  }
  const auto cx = avalue_line_census(m, 2.0, 500.0, 30.0);
  const auto cy = avalue_line_census(m2, 4.0, 500.0, 30.0);
  REQUIRE(cx.candidates.size() == cy.candidates.size());
  for (std::size_t k = 0; k < cx.candidates.size(); ++k) {
    CHECK(std::abs(cx.candidates[k] - cy.candidates[k]) <= 2e-9);
  }
}

TEST_CASE("a-value census") {
  const auto m = make_zeta_preset(3);
  SUBCASE("large |a| has no candidates") {
    // |z| <= 1 + 2^{-1/2} + 3^{-1/2} < 2.3 on the line.
    const auto scan = avalue_line_census(m, 5.0, 1000.0, 50.0);
    CHECK(scan.candidates.empty());
    CHECK(scan.hits.empty());
  }
  SUBCASE("a = 2 has candidates but no hits") {
    const auto scan = avalue_line_census(m, 2.0, 1000.0, 100.0);
    CHECK_FALSE(scan.candidates.empty());
    CHECK(scan.hits.empty());
    CHECK(scan.candidateResiduals.size() == scan.candidates.size());
    for (double r : scan.candidateResiduals) CHECK(r > 1e-6);
  }
  SUBCASE("an a-value planted on the line is found as a hit") {
    const double t0 = 1234.5;
    const Complex a = eval_zetaN(m, Complex(0.5, t0));
    LineScanOptions opts;
    opts.hitTol = 1e-6;
    const auto scan = avalue_line_census(m, a, 1230.0, 10.0, opts);
    REQUIRE(scan.hits.size() == 1);
    CHECK(std::abs(scan.hits[0] - t0) < 1e-8);
    CHECK(std::find(scan.candidates.begin(), scan.candidates.end(), scan.hits[0]) !=
          scan.candidates.end());
    CHECK(std::abs(eval_zetaN(m, Complex(0.5, scan.hits[0])) - a) <= opts.hitTol);
  }
}

TEST_CASE("line scans reject unsupported inputs") {
  const auto m = make_zeta_preset(3);
  CHECK_THROWS_AS(avalue_line_census(m, 0.0, 100.0, 10.0), InvalidArgument);
  CHECK_THROWS_AS(count_line_zeros(m, 100.0, 0.0), InvalidArgument);
  Eigen::VectorXcd a(3);
  a << 1.0, Complex(1.0, 0.5), 1.0;
  Eigen::VectorXd lam(3);
  lam << 1.0, 2.0, 3.0;
  const ApproximationModel complex_model(SeriesSpec(a, lam, {}), m.fe());
  CHECK_THROWS_AS(count_line_zeros(complex_model, 100.0, 10.0), NonRealCoefficientsError);
}

TEST_CASE("line scans do not depend on the worker count") {
  const auto m = make_zeta_preset(3);
  LineScanOptions threaded;
  threaded.workers = 3;
  const auto x = count_line_zeros(m, 700.0, 60.0);
  const auto y = count_line_zeros(m, 700.0, 60.0, threaded);
  CHECK(x.zeroOrdinates == y.zeroOrdinates);
  REQUIRE(x.samples.size() == y.samples.size());
  for (std::size_t k = 0; k < x.samples.size(); ++k) CHECK(x.samples[k].Z == y.samples[k].Z);
  const auto cx = avalue_line_census(m, 2.0, 700.0, 60.0);
  const auto cy = avalue_line_census(m, 2.0, 700.0, 60.0, threaded);
  CHECK(cx.candidates == cy.candidates);
  CHECK(cx.candidateResiduals == cy.candidateResiduals);
}

TEST_CASE("simplicity_check") {
  const auto m = make_zeta_preset(3);
  const auto at50 = simplicity_check(m, {50.0});
  CHECK(at50[0].argGDerivative < 0.0);
  CHECK(at50[0].verdict == Simplicity::Simple);

  const auto low = simplicity_check(m, {0.5});
  CHECK(low[0].argGDerivative > 0.0);
  CHECK(low[0].verdict == Simplicity::Inconclusive);

  const auto scan = count_line_zeros(m, 100.0, 20.0);
  const auto reports = simplicity_check(m, scan.zeroOrdinates);
  for (const auto& r : reports) {
    CHECK(r.verdict == Simplicity::Simple);
    CHECK(r.slope > 1e-6);
    CHECK(r.relativeZ < 1e-8);
  }
}

TEST_CASE("line_Z_derivative matches a difference quotient") {
  const auto m = make_zeta_preset(4);
  const auto p = line_point(m, 321.0);
  const double h = 1e-5;
  const double fd = (line_point(m, 321.0 + h, p).Z - line_point(m, 321.0 - h, p).Z) / (2.0 * h);
  CHECK(line_Z_derivative(m, p) == doctest::Approx(fd).epsilon(1e-6));
}
