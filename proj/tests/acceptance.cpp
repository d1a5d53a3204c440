#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zetapprox/asymptotics.hpp"
#include "zetapprox/cli.hpp"
#include "zetapprox/counting.hpp"
#include "zetapprox/critical_line.hpp"
#include "zetapprox/evaluator.hpp"
#include "zetapprox/special.hpp"

using namespace zetapprox;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limitSeconds;
  std::function<Verdict()> body;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double wrap_pi(double x) { return std::remainder(x, 2.0 * std::numbers::pi); }

Verdict functional_equation_identity() {
  std::mt19937_64 rng(11);
  const auto zeta = make_zeta_preset(3).fe();
  const FunctionalEquation two_factor(0.8, 2.0, {{1.0, 0.5}, {0.5, 0.25}});
  double worst = 0.0;
  for (const auto* fe : {&zeta, &two_factor}) {
    const double c = fe->delta() / 2.0;
    std::uniform_real_distribution<double> sigma(c - 3.0, c + 3.0), t(10.0, 1e4);
    for (int k = 0; k < 1000; ++k) {
      const Complex s(sigma(rng), t(rng));
      const Complex prod = eval_G(*fe, s) * eval_G(*fe, fe->delta() - s);
      worst = std::max(worst, std::abs(prod - 1.0));
    }
  }
  return {worst <= 1e-9, fmt("max |G(s)G(delta-s) - 1| = %.3g (tol 1e-9)", worst)};
}

Verdict chi_agreement() {
  std::mt19937_64 rng(12);
  const auto fe = make_zeta_preset(3).fe();
  std::uniform_real_distribution<double> sigma(-2.5, 3.5), t(10.0, 1e4);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Complex s(sigma(rng), t(rng));
    const Complex want = oracle::chi(s);
    worst = std::max(worst, std::abs(eval_G(fe, s) - want) / std::abs(want));
  }
  return {worst <= 1e-10, fmt("max relative error = %.3g (tol 1e-10)", worst)};
}

Verdict spira() {
  std::string detail;
  bool ok = true;
  for (int N : {1, 2}) {
    const auto m = make_zeta_preset(N);
    const RectRegion region{-3.0, 4.0, 10.0, 200.0};
    const auto roots = locate_roots(m, 0.0, region, 1e-7);
    double off = 0.0;
    for (const auto& r : roots) off = std::max(off, std::abs(r.center.real() - 0.5));
    const int strip = winding_count(m, 0.0, region);
    const auto line = count_line_zeros(m, 10.0, 190.0);
    const int on_line = static_cast<int>(line.zeroOrdinates.size());
    ok = ok && off <= 1e-6 && on_line == strip;
    detail += fmt("N=%d roots=%zu max|sigma-1/2|=%.2g line=%d strip=%d; ", N, roots.size(), off,
                  on_line, strip);
  }
  return {ok, detail};
}

Verdict winding_oracle() {
  std::mt19937_64 rng(14);
  const auto m = make_zeta_preset(3);
  std::uniform_real_distribution<double> left(-1.5, 1.5), width(0.5, 2.0), bottom(50.0, 496.0),
      unit(0.25, 1.0);
  const Complex values[] = {0.0, 2.0, Complex(1.0, 1.0)};
  int agree = 0, total = 0, nonzero = 0;
  for (const Complex a : values) {
    for (int k = 0; k < 10; ++k) {
      const double w = width(rng);
      const double h = std::min(4.0 / w, 4.0) * unit(rng);
      const double sl = left(rng);
      const double tb = bottom(rng);
      const auto res = count_winding(m, a, {sl, sl + w, tb, tb + h});
      const auto& g = res.region;
      int per_edge[4];
      for (int e = 0; e < 4; ++e) per_edge[e] = 10 * static_cast<int>(res.edgeSamples[e]);
      const long dense = oracle::dense_grid_winding(
          [&](Complex s) { return eval_zetaN(m, s) - a; }, g.sigmaLeft, g.sigmaRight, g.tBottom,
          g.tTop, per_edge);
      agree += dense == res.winding;
      nonzero += res.winding != 0;
      ++total;
    }
  }
  return {agree == total, fmt("%d/%d rectangles agree, %d with a-values inside", agree, total,
                              nonzero)};
}

Verdict count_regression() {
  const auto m = make_zeta_preset(3);
  const double T = 1000.0, U = 1000.0;
  const double c = m.critical_sigma();
  const double bound = calibrate_sigma_bound(m, 2.0, T, U);
  const auto w = count_winding(m, 2.0, {c - bound, c + bound, T, T + U});
  const auto p = predicted_count(prediction_input(m, 2.0, T, U, 1.1));
  const auto d = compare(w.winding, p.value, p.scale);
  return {std::abs(d.normalized) <= 5.0,
          fmt("empirical=%d predicted=%.3f normalized=%.4f (tol 5)", w.winding, p.value,
              d.normalized)};
}

Verdict psi_split() {
  const double lambda2 = 2.0;
  const double h = 0.5 * std::log(lambda2);
  struct Row {
    Complex a, a1;
    double want;
    PsiCase c;
  };
  const Row rows[] = {{2.0, 0.0, h, PsiCase::AOffZeroA1},
                      {1.0, 1.0, -h, PsiCase::AEqualsNonZeroA1},
                      {2.0, 1.0, 0.0, PsiCase::Otherwise},
                      {0.0, 0.0, 0.0, PsiCase::Otherwise}};
  int exact = 0;
  for (const auto& r : rows) {
    exact += psi_constant(r.a, r.a1, lambda2) == r.want && psi_case(r.a, r.a1) == r.c;
  }
  const auto m = make_zeta_preset(3);
  const bool preset = psi_constant(2.0, 1.0, 2.0) == 0.0 &&
                      prediction_input(m, 1.0, 1000.0, 100.0).a1 == Complex(1.0, 0.0);
  return {exact == 4 && preset, fmt("%d/4 table rows exact", exact)};
}

Verdict clustering() {
  const auto m = make_zeta_preset(3);
  const double bound = calibrate_sigma_bound(m, 2.0, 1000.0, 100.0);
  const auto r = cluster_census(m, 2.0, 1000.0, 100.0, 0.05, bound);
  const double fraction = r.total ? static_cast<double>(r.outside) / r.total : 0.0;
  return {r.total > 0 && fraction <= 0.1,
          fmt("total=%d within=%d outside=%d fraction=%.3f (tol 0.10)", r.total, r.within,
              r.outside, fraction)};
}

Verdict critical_zero_proportion() {
  const auto m = make_zeta_preset(3);
  const double c = m.critical_sigma();
  const double bound = calibrate_sigma_bound(m, 0.0, 1000.0, 100.0);
  const int strip = winding_count(m, 0.0, {c - bound, c + bound, 1000.0, 1100.0});
  const int line = static_cast<int>(count_line_zeros(m, 1000.0, 100.0).zeroOrdinates.size());
  const double ratio = strip ? static_cast<double>(line) / strip : 0.0;
  return {strip > 0 && ratio >= 0.9, fmt("line=%d strip=%d ratio=%.3f (tol 0.9)", line, strip, ratio)};
}

Verdict avoid_line() {
  const auto m = make_zeta_preset(3);
  bool ok = true;
  std::string detail;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    LineScanOptions opts;
    opts.hitTol = tol;
    const auto full = avalue_line_census(m, 2.0, 1000.0, 1000.0, opts);
    ok = ok && full.hits.empty() && !full.candidates.empty();
    detail += fmt("tol=%.0e hits=%zu candidates=%zu; ", tol, full.hits.size(),
                  full.candidates.size());
  }
  const auto half = avalue_line_census(m, 2.0, 1000.0, 500.0);
  const auto full = avalue_line_census(m, 2.0, 1000.0, 1000.0);
  const double ratio = half.candidates.empty()
                           ? 0.0
                           : static_cast<double>(full.candidates.size()) / half.candidates.size();
  ok = ok && ratio > 0.0 && ratio <= 2.25;
  detail += fmt("n(2U)/n(U)=%.3f (tol 2.25)", ratio);
  return {ok, detail};
}

Verdict strip_predicates() {
  const auto m = make_zeta_preset(3);
  std::vector<double> grid;
  for (int k = 0; k < 20; ++k) grid.push_back(50.0 + 450.0 * k / 19.0);
  int passed = 0, total = 0;
  for (Complex a : {Complex(2.0), Complex(1.0)}) {
    for (double sigma : {30.0, -30.0}) {
      const auto r = strip_check(m, a, sigma, grid);
      for (const auto& p : r.points) passed += p.pass;
      total += static_cast<int>(r.points.size());
    }
  }
  return {total == 80 && passed == total, fmt("%d/%d predicate points hold", passed, total)};
}

Verdict monotone_phase() {
  const auto fe = make_zeta_preset(3).fe();
  const double c = fe.delta() / 2.0;
  double largest = -INFINITY, worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double t = 20.0 + (1e4 - 20.0) * k / 999.0;
    const double d = arg_G_derivative(fe, c, t);
    largest = std::max(largest, d);
    const double h = 1e-3;
    const double fdiff =
        wrap_pi(log_G(fe, Complex(c, t + h)).imag() - log_G(fe, Complex(c, t - h)).imag()) /
        (2.0 * h);
    worst = std::max(worst, std::abs(fdiff - d) / std::abs(d));
  }
  return {largest < 0.0 && worst <= 1e-6,
          fmt("max derivative=%.4f, max relative fd error=%.3g (tol 1e-6)", largest, worst)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "zetapprox_acceptance";
  std::filesystem::create_directories(dir);
  struct Case {
    std::string target;
    int N;
    Complex a;
    double T, U;
  };
  const Case cases[] = {{"spira", 2, 0.0, 10.0, 40.0},        {"count", 3, 2.0, 1000.0, 50.0},
                        {"cluster", 3, 2.0, 1000.0, 20.0},    {"critical-zero", 3, 0.0, 1000.0, 50.0},
                        {"critical", 3, 2.0, 1000.0, 50.0},   {"strip", 3, 2.0, 1000.0, 50.0}};
  int identical = 0;
  std::string mismatched;
  for (const auto& c : cases) {
    RunConfig config;
    config.model.N = c.N;
    config.command.name = "verify";
    config.command.target = c.target;
    config.command.a = c.a;
    config.command.T = c.T;
    config.command.U = c.U;
    config.output.directory = dir.string();
    config.workers = 1;
    std::string bodies[2];
    for (int run_index = 0; run_index < 2; ++run_index) {
      config.output.prefix = c.target + "_" + std::to_string(run_index);
      const auto outcome = run(config);
      if (outcome.exitCode == kExitOk || outcome.exitCode == kExitVerifyFailed) {
        bodies[run_index] = slurp(outcome.csvPath);
      }
    }
    if (!bodies[0].empty() && bodies[0] == bodies[1]) {
      ++identical;
    } else {
      mismatched += " " + c.target;
    }
  }
  std::filesystem::remove_all(dir);
  return {identical == 6, fmt("%d/6 verify targets byte-identical%s", identical,
                              mismatched.empty() ? "" : (";" + mismatched).c_str())};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "functional-equation identity", 5, functional_equation_identity},
      {2, "chi agreement", 5, chi_agreement},
      {3, "Spira check N = 1, 2", 120, spira},
      {4, "winding vs dense-grid oracle", 120, winding_oracle},
      {5, "count vs asymptotic", 600, count_regression},
      {6, "Psi case split", 1, psi_split},
      {7, "clustering near the line", 300, clustering},
      {8, "critical-line zero proportion", 300, critical_zero_proportion},
      {9, "non-zero a-values avoid the line", 600, avoid_line},
      {10, "strip predicates", 10, strip_predicates},
      {11, "monotone phase", 10, monotone_phase},
      {12, "verify determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limitSeconds;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::printf("%s %2d %-34s %s [%.2f s, limit %.0f s]\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), v.detail.c_str(), seconds, c.limitSeconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
