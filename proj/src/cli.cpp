#include "zetapprox/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"
#include "zetapprox/asymptotics.hpp"
#include "zetapprox/counting.hpp"
#include "zetapprox/critical_line.hpp"
#include "zetapprox/evaluator.hpp"
#include "zetapprox/special.hpp"

namespace zetapprox {

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

namespace {

constexpr const char* kVersion = "1.0.0";

using Row = std::vector<std::string>;
using Summary = std::vector<std::pair<std::string, std::string>>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

struct CommandResult {
  Table table;
  Summary summary;
  bool passed = true;
};

std::string fd(double x) { return format_double(x); }
std::string fi(long long x) { return std::to_string(x); }
std::string fb(bool b) { return b ? "true" : "false"; }

struct Context {
  const RunConfig& config;
  const CommandParams& p;
  ApproximationModel model;
  CountOptions count;
  LineScanOptions scan;

  explicit Context(const RunConfig& c)
      : config(c), p(c.command), model(build_model(c.model)) {
    count.workers = c.workers;
    scan.workers = c.workers;
    scan.hitTol = c.command.hitTol;
  }

  double sigma_bound(Complex a) const {
    return p.sigmaBound ? *p.sigmaBound : calibrate_sigma_bound(model, a, p.T, p.U);
  }

  RectRegion region(Complex a) const {
    const double c = model.critical_sigma();
    double left = 0.0, right = 0.0;
    if (p.sigmaLeft && p.sigmaRight) {
      left = *p.sigmaLeft;
      right = *p.sigmaRight;
    } else {
      const double b = sigma_bound(a);
      left = p.sigmaLeft.value_or(c - b);
      right = p.sigmaRight.value_or(c + b);
    }
    return {left, right, p.T, p.T + p.U};
  }

  std::optional<Prediction> prediction(Complex a, double T, double U) const {
    if (model.series().size() < 2) return std::nullopt;
    return predicted_count(prediction_input(model, a, T, U, p.gamma));
  }
};

CommandResult run_eval(const Context& ctx) {
  const Complex s = ctx.p.s;
  CommandResult r;
  const Complex F = eval_FN(ctx.model.series(), s);
  const Complex G = eval_G(ctx.model.fe(), s);
  const Complex z = eval_zetaN(ctx.model, s);
  if (!std::isfinite(std::abs(z))) throw DomainError("eval: zeta_N is not finite at s");
  r.table.header = {"s", "F_N", "G", "zeta_N", "abs_zeta_N"};
  r.table.rows.push_back(
      {format_complex(s), format_complex(F), format_complex(G), format_complex(z), fd(std::abs(z))});
  r.summary = {{"zeta_N", format_complex(z)}};
  return r;
}

Row count_row(const WindingResult& w, Complex a, const std::optional<Prediction>& pred) {
  const auto& g = w.region;
  Row row = {fd(g.sigmaLeft), fd(g.sigmaRight), fd(g.tBottom), fd(g.tTop), format_complex(a),
             fi(w.winding)};
  if (pred) {
    row.push_back(fd(pred->value));
    row.push_back(fd(compare(w.winding, pred->value, pred->scale).normalized));
  } else {
    row.push_back("");
    row.push_back("");
  }
  return row;
}

CommandResult run_count(const Context& ctx, bool verify) {
  const Complex a = ctx.p.a;
  const WindingResult w = count_winding(ctx.model, a, ctx.region(a), ctx.count);
  const auto pred = ctx.prediction(a, ctx.p.T, ctx.p.U);
  CommandResult r;
  r.table.header = {"sigmaLeft", "sigmaRight", "tBottom", "tTop", "a",
                    "winding",   "predicted",  "discrepancy"};
  r.table.rows.push_back(count_row(w, a, pred));
  r.summary = {{"winding", fi(w.winding)}, {"residual", fd(w.residual)}};
  if (pred) {
    const double norm = compare(w.winding, pred->value, pred->scale).normalized;
    r.summary.push_back({"predicted", fd(pred->value)});
    r.summary.push_back({"scale", fd(pred->scale)});
    r.summary.push_back({"normalized_discrepancy", fd(norm)});
    if (verify) r.passed = std::abs(norm) <= ctx.p.tolerance;
  } else if (verify) {
    throw InvalidArgument("verify count needs at least two terms for the prediction");
  }
  if (verify) {
    r.table.header.push_back("pass");
    r.table.rows.back().push_back(fb(r.passed));
  }
  return r;
}

CommandResult run_locate(const Context& ctx) {
  const Complex a = ctx.p.a;
  LocateOptions lo;
  lo.count = ctx.count;
  const auto roots = locate_roots(ctx.model, a, ctx.region(a), ctx.p.radius, lo);
  CommandResult r;
  r.table.header = {"sigma", "t", "radius", "multiplicity"};
  int total = 0;
  for (const auto& root : roots) {
    r.table.rows.push_back({fd(root.center.real()), fd(root.center.imag()), fd(root.radius),
                            fi(root.multiplicity)});
    total += root.multiplicity;
  }
  r.summary = {{"roots", fi(static_cast<long long>(roots.size()))}, {"multiplicity_total", fi(total)}};
  return r;
}

// Z on the scan branch: continued from the nearest preceding sample.
double scan_Z(const ApproximationModel& model, const LineScanResult& scan, double t) {
  auto it = std::upper_bound(scan.samples.begin(), scan.samples.end(), t,
                             [](double x, const LinePoint& q) { return x < q.t; });
  if (it != scan.samples.begin()) --it;
  if (it->t == t) return it->Z;
  return line_point(model, t, *it).Z;
}

CommandResult run_scan_line(const Context& ctx) {
  const Complex a = ctx.p.a;
  const bool zeros = a == Complex(0.0);
  const LineScanResult scan = zeros ? count_line_zeros(ctx.model, ctx.p.T, ctx.p.U, ctx.scan)
                                    : avalue_line_census(ctx.model, a, ctx.p.T, ctx.p.U, ctx.scan);
  struct Entry {
    double t;
    int order;
    Row row;
  };
  std::vector<Entry> entries;
  const Complex c(ctx.model.critical_sigma(), 0.0);
  for (const auto& s : scan.samples) entries.push_back({s.t, 0, {fd(s.t), fd(s.Z), "sample", ""}});
  for (double t : scan.zeroOrdinates) {
    const double res = std::abs(eval_zetaN(ctx.model, c + Complex(0.0, t)));
    entries.push_back({t, 1, {fd(t), fd(scan_Z(ctx.model, scan, t)), "zero", fd(res)}});
  }
  for (std::size_t k = 0; k < scan.candidates.size(); ++k) {
    const double t = scan.candidates[k];
    entries.push_back({t, 2,
                       {fd(t), fd(scan_Z(ctx.model, scan, t)), "candidate",
                        fd(scan.candidateResiduals[k])}});
    if (scan.candidateResiduals[k] <= ctx.p.hitTol) {
      entries.push_back({t, 3,
                         {fd(t), fd(scan_Z(ctx.model, scan, t)), "hit",
                          fd(scan.candidateResiduals[k])}});
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return x.t != y.t ? x.t < y.t : x.order < y.order;
  });
  CommandResult r;
  r.table.header = {"t", "Z", "kind", "residual"};
  for (auto& e : entries) r.table.rows.push_back(std::move(e.row));
  r.summary = {{"samples", fi(static_cast<long long>(scan.samples.size()))}};
  if (zeros) {
    r.summary.push_back({"zeros", fi(static_cast<long long>(scan.zeroOrdinates.size()))});
  } else {
    r.summary.push_back({"candidates", fi(static_cast<long long>(scan.candidates.size()))});
    r.summary.push_back({"hits", fi(static_cast<long long>(scan.hits.size()))});
  }
  return r;
}

CommandResult run_cluster(const Context& ctx, bool verify) {
  const Complex a = ctx.p.a;
  const double bound = ctx.sigma_bound(a);
  const ClusterReport rep =
      cluster_census(ctx.model, a, ctx.p.T, ctx.p.U, ctx.p.eps, bound, ctx.count);
  const double frac = rep.total > 0 ? static_cast<double>(rep.outside) / rep.total : 0.0;
  CommandResult r;
  r.table.header = {"a",     "T",      "U",       "epsilon",         "sigma_bound",
                    "total", "within", "outside", "outside_fraction"};
  r.table.rows.push_back({format_complex(a), fd(ctx.p.T), fd(ctx.p.U), fd(ctx.p.eps), fd(bound),
                          fi(rep.total), fi(rep.within), fi(rep.outside), fd(frac)});
  r.summary = {{"total", fi(rep.total)},
               {"within", fi(rep.within)},
               {"outside", fi(rep.outside)},
               {"outside_fraction", fd(frac)}};
  if (verify) {
    r.passed = rep.total > 0 && frac <= ctx.p.maxFraction;
    r.table.header.push_back("pass");
    r.table.rows.back().push_back(fb(r.passed));
  }
  return r;
}

std::vector<double> t_grid(const CommandParams& p) {
  std::vector<double> grid;
  if (p.gridPoints == 1) return {p.T};
  for (int k = 0; k < p.gridPoints; ++k) grid.push_back(p.T + p.U * k / (p.gridPoints - 1));
  return grid;
}

CommandResult run_strip(const Context& ctx, bool verify) {
  const Complex a = ctx.p.a;
  const double c = ctx.model.critical_sigma();
  if (!(ctx.p.sigma > std::abs(c))) {
    throw InvalidArgument("strip: sigma must exceed |delta/2| so that +sigma and -sigma lie on "
                          "opposite sides of the critical line");
  }
  const auto grid = t_grid(ctx.p);
  CommandResult r;
  r.table.header = {"sigma", "t", "side", "value", "pass"};
  bool all = true;
  for (double sigma : {ctx.p.sigma, -ctx.p.sigma}) {
    const StripReport rep = strip_check(ctx.model, a, sigma, grid);
    const std::string side = rep.rightSide ? "right" : "left";
    for (const auto& pt : rep.points) {
      r.table.rows.push_back({fd(sigma), fd(pt.t), side, format_complex(pt.value), fb(pt.pass)});
    }
    all = all && rep.allPass;
    r.summary.push_back({side + "_all_pass", fb(rep.allPass)});
    r.summary.push_back({side + "_minimal_sigma", rep.minimalSigma ? fd(*rep.minimalSigma) : ""});
    if (rep.shiftedPredicate) r.summary.push_back({"right_predicate", "shifted (a = a1)"});
  }
  if (verify) r.passed = all;
  return r;
}

CommandResult run_verify_spira(const Context& ctx) {
  const double c = ctx.model.critical_sigma();
  const RectRegion region{c - 3.5, c + 3.5, ctx.p.T, ctx.p.T + ctx.p.U};
  LocateOptions lo;
  lo.count = ctx.count;
  const auto roots = locate_roots(ctx.model, 0.0, region, ctx.p.radius, lo);
  const auto scan = count_line_zeros(ctx.model, ctx.p.T, ctx.p.U, ctx.scan);
  CommandResult r;
  r.table.header = {"sigma", "t", "radius", "multiplicity", "on_line"};
  bool all_on_line = true;
  int total = 0;
  for (const auto& root : roots) {
    const bool on = std::abs(root.center.real() - c) <= 1e-6;
    all_on_line = all_on_line && on;
    total += root.multiplicity;
    r.table.rows.push_back({fd(root.center.real()), fd(root.center.imag()), fd(root.radius),
                            fi(root.multiplicity), fb(on)});
  }
  const int line = static_cast<int>(scan.zeroOrdinates.size());
  r.passed = all_on_line && line == total;
  r.summary = {{"strip_zeros", fi(total)},
               {"line_zeros", fi(line)},
               {"all_on_line", fb(all_on_line)}};
  return r;
}

CommandResult run_verify_critical_zero(const Context& ctx) {
  const double c = ctx.model.critical_sigma();
  const double bound = ctx.sigma_bound(0.0);
  const int strip =
      winding_count(ctx.model, 0.0, {c - bound, c + bound, ctx.p.T, ctx.p.T + ctx.p.U}, ctx.count);
  const auto scan = count_line_zeros(ctx.model, ctx.p.T, ctx.p.U, ctx.scan);
  const int line = static_cast<int>(scan.zeroOrdinates.size());
  const double ratio = strip > 0 ? static_cast<double>(line) / strip : 0.0;
  CommandResult r;
  r.passed = strip > 0 && line <= strip && ratio >= ctx.p.minRatio;
  r.table.header = {"T", "U", "sigma_bound", "line_zeros", "strip_zeros", "ratio", "pass"};
  r.table.rows.push_back({fd(ctx.p.T), fd(ctx.p.U), fd(bound), fi(line), fi(strip), fd(ratio),
                          fb(r.passed)});
  r.summary = {{"line_zeros", fi(line)}, {"strip_zeros", fi(strip)}, {"ratio", fd(ratio)}};
  return r;
}

CommandResult run_verify_critical(const Context& ctx) {
  const Complex a = ctx.p.a;
  const auto scan = avalue_line_census(ctx.model, a, ctx.p.T, ctx.p.U, ctx.scan);
  std::set<double, std::greater<>> tolerances = {1e-6, 1e-8, 1e-10, ctx.p.hitTol};
  const double logN = std::log(static_cast<double>(ctx.model.series().size()));
  CommandResult r;
  r.table.header = {"window_U", "hit_tol", "candidates", "hits", "density"};
  bool no_hits = true;
  double dmin = INFINITY, dmax = 0.0;
  for (double frac : {0.25, 0.5, 1.0}) {
    const double U = ctx.p.U * frac;
    const double top = ctx.p.T + U;
    long long cands = 0;
    for (double t : scan.candidates) cands += t <= top;
    const double density = cands / (U * logN);
    dmin = std::min(dmin, density);
    dmax = std::max(dmax, density);
    for (double tol : tolerances) {
      long long hits = 0;
      for (std::size_t k = 0; k < scan.candidates.size(); ++k) {
        hits += scan.candidates[k] <= top && scan.candidateResiduals[k] <= tol;
      }
      no_hits = no_hits && hits == 0;
      r.table.rows.push_back({fd(U), fd(tol), fi(cands), fi(hits), fd(density)});
    }
  }
  const bool stable = dmin > 0.0 && dmax <= 2.0 * dmin;
  r.passed = no_hits && !scan.candidates.empty() && stable;
  double min_residual = INFINITY;
  for (double res : scan.candidateResiduals) min_residual = std::min(min_residual, res);
  r.summary = {{"candidates", fi(static_cast<long long>(scan.candidates.size()))},
               {"hits_at_loosest_tolerance", no_hits ? "0" : "nonzero"},
               {"min_candidate_residual", scan.candidates.empty() ? "" : fd(min_residual)},
               {"density_ratio", dmin > 0.0 ? fd(dmax / dmin) : ""}};
  return r;
}

CommandResult dispatch(const Context& ctx) {
  const std::string& name = ctx.p.name;
  if (name == "eval") return run_eval(ctx);
  if (name == "count") return run_count(ctx, false);
  if (name == "locate") return run_locate(ctx);
  if (name == "scan-line") return run_scan_line(ctx);
  if (name == "cluster") return run_cluster(ctx, false);
  if (name == "strip") return run_strip(ctx, false);
  const std::string& target = ctx.p.target;
  if (target == "spira") return run_verify_spira(ctx);
  if (target == "count") return run_count(ctx, true);
  if (target == "cluster") return run_cluster(ctx, true);
  if (target == "critical-zero") return run_verify_critical_zero(ctx);
  if (target == "critical") return run_verify_critical(ctx);
  if (target == "strip") return run_strip(ctx, true);
  throw ConfigError("unknown command " + name + " " + target);
}

void write_csv(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  auto write_row = [&](const Row& row) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_field(row[k]);
    out << "\n";
  };
  write_row(table.header);
  for (const auto& row : table.rows) write_row(row);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

RunOutcome run(const RunConfig& config) {
  namespace fs = std::filesystem;
  using clock = std::chrono::steady_clock;
  RunOutcome outcome;
  const fs::path dir(config.output.directory);
  outcome.csvPath = (dir / (config.output.prefix + ".csv")).string();
  outcome.manifestPath = (dir / (config.output.prefix + ".manifest.json")).string();

  nlohmann::ordered_json manifest;
  manifest["tool"] = "zetapprox";
  manifest["version"] = kVersion;
  manifest["started_at"] = utc_timestamp();
  manifest["config"] = serialize(config);
  const auto start = clock::now();
  try {
    fs::create_directories(dir);
    nlohmann::ordered_json header = nlohmann::ordered_json::object();
    for (const auto& [k, v] : config_header(config)) {
      if (k == "warning") {
        header["warnings"].push_back(v);
      } else {
        header[k] = v;
      }
    }
    manifest["header"] = header;
    const Context ctx(config);
    CommandResult result = dispatch(ctx);
    write_csv(outcome.csvPath, result.table);
    outcome.summary = result.summary;
    outcome.passed = result.passed;
    outcome.exitCode = result.passed ? kExitOk : kExitVerifyFailed;
    outcome.message = result.passed ? "ok" : "verification failed";
    manifest["artifacts"] = {outcome.csvPath};
  } catch (const ConfigError& e) {
    outcome.exitCode = kExitConfig;
    outcome.message = e.what();
  } catch (const InvalidArgument& e) {
    outcome.exitCode = kExitConfig;
    outcome.message = e.what();
  } catch (const BoundaryRootError& e) {
    outcome.exitCode = kExitBoundaryRoot;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exitCode = kExitNumeric;
    outcome.message = e.what();
  }
  if (outcome.exitCode != kExitOk && outcome.exitCode != kExitVerifyFailed) outcome.passed = false;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : outcome.summary) summary[k] = v;
  manifest["summary"] = summary;
  manifest["passed"] = outcome.passed;
  manifest["exit_code"] = outcome.exitCode;
  manifest["message"] = outcome.message;
  manifest["wall_seconds"] = std::chrono::duration<double>(clock::now() - start).count();
  try {
    std::ofstream out(outcome.manifestPath, std::ios::binary);
    if (out) out << manifest.dump(2) << "\n";
  } catch (const std::exception&) {
  }
  return outcome;
}

}  // namespace zetapprox
