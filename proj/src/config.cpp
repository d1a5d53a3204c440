#include "zetapprox/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "zetapprox/asymptotics.hpp"
#include "zetapprox/special.hpp"

namespace zetapprox {

namespace pt = boost::property_tree;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(Complex z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

namespace {

bool parse_real(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size() && std::isfinite(out);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ' && c != '\t') t += c;
  }
  static const std::regex re(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i)?$)");
  static const std::regex imag_only(R"(^([+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i$)");
  std::smatch m;
  if (std::regex_match(t, m, imag_only)) {
    std::string y = m[1].str();
    if (y.empty() || y == "+") y = "1";
    if (y == "-") y = "-1";
    double im = 0.0;
    if (!parse_real(y, im)) throw ConfigError("bad complex number '" + text + "'");
    return {0.0, im};
  }
  if (t.empty() || !std::regex_match(t, m, re) || !m[1].matched) {
    throw ConfigError("bad complex number '" + text + "'");
  }
  double re_part = 0.0, im_part = 0.0;
  if (!parse_real(m[1].str(), re_part)) throw ConfigError("bad complex number '" + text + "'");
  if (m[2].matched) {
    std::string y = m[2].str();
    if (y == "+") y = "1";
    if (y == "-") y = "-1";
    if (!parse_real(y, im_part)) throw ConfigError("bad complex number '" + text + "'");
  }
  return {re_part, im_part};
}

namespace {

const std::set<std::string> kCommands = {"eval",    "count", "locate", "scan-line",
                                         "cluster", "strip", "verify"};
const std::set<std::string> kTargets = {"spira",         "count",    "cluster",
                                        "critical-zero", "critical", "strip"};

const std::map<std::string, std::set<std::string>> kKeys = {
    {"model",
     {"preset", "N", "coefficients", "exponents", "envelope_C", "envelope_p", "lambda", "delta",
      "omega", "sigma0"}},
    {"command",
     {"command", "target", "a", "s", "T", "U", "eps", "sigma_bound", "sigma_left", "sigma_right",
      "sigma", "grid_points", "hit_tol", "gamma", "radius", "seed", "tolerance", "max_fraction",
      "min_ratio", "workers"}},
    {"output", {"directory", "prefix"}},
};

const std::set<std::string> kInlineKeys = {"coefficients", "exponents", "envelope_C",
                                           "envelope_p",   "lambda",    "delta",
                                           "omega"};

// Line of every "section.key" in the raw text, for error context.
std::map<std::string, int> key_lines(const std::string& text) {
  std::map<std::string, int> out;
  std::istringstream in(text);
  std::string line, section;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq != std::string::npos) out.emplace(section + "." + trim(t.substr(0, eq)), n);
  }
  return out;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, const std::map<std::string, int>& lines)
      : tree_(tree), lines_(lines) {}

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    const auto sec = tree_.get_child_optional(section);
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    std::string s = trim(*v);
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
      s = s.substr(1, s.size() - 2);
    }
    return s;
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& why) const {
    const std::string full = section + "." + key;
    const auto it = lines_.find(full);
    const int line = it == lines_.end() ? 0 : it->second;
    std::string msg = "config error in " + full;
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    throw ConfigError(msg + ": " + why, full, line);
  }

  std::optional<double> real(const std::string& section, const std::string& key) const {
    const auto s = raw(section, key);
    if (!s) return std::nullopt;
    double v = 0.0;
    if (!parse_real(*s, v)) fail(section, key, "expected a finite real number, got '" + *s + "'");
    return v;
  }

  std::optional<long long> integer(const std::string& section, const std::string& key) const {
    const auto s = raw(section, key);
    if (!s) return std::nullopt;
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(s->c_str(), &end, 10);
    if (s->empty() || end != s->c_str() + s->size() || errno != 0) {
      fail(section, key, "expected an integer, got '" + *s + "'");
    }
    return v;
  }

  std::optional<Complex> complex(const std::string& section, const std::string& key) const {
    const auto s = raw(section, key);
    if (!s) return std::nullopt;
    try {
      return parse_complex(*s);
    } catch (const ConfigError& e) {
      fail(section, key, e.what());
    }
  }

  std::vector<std::string> list(const std::string& section, const std::string& key) const {
    std::vector<std::string> out;
    const auto s = raw(section, key);
    if (!s) return out;
    std::istringstream in(*s);
    std::string item;
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) fail(section, key, "empty list entry");
      out.push_back(item);
    }
    return out;
  }

 private:
  const pt::ptree& tree_;
  const std::map<std::string, int>& lines_;
};

std::string violation_key(const std::string& code) {
  if (code.rfind("exponent", 0) == 0) return "model.exponents";
  if (code == "coefficient_envelope" || code == "real_flag") return "model.coefficients";
  if (code == "envelope_invalid") return "model.envelope_C";
  if (code == "lambda_nonpositive") return "model.lambda";
  if (code.rfind("omega", 0) == 0 || code.rfind("gamma", 0) == 0) return "model.omega";
  return "model.coefficients";
}

bool tolerated(const std::string& code) {
  return code == "too_few_terms" || code == "a2_zero" || code == "a3_zero";
}

void parse_model(const Reader& r, RunConfig& c) {
  ModelSource& m = c.model;
  if (auto p = r.raw("model", "preset")) m.preset = *p;
  if (m.preset != "zeta" && m.preset != "inline") {
    r.fail("model", "preset", "expected 'zeta' or 'inline', got '" + m.preset + "'");
  }
  if (auto v = r.real("model", "sigma0")) m.sigma0 = *v;
  if (m.preset == "zeta") {
    for (const auto& k : kInlineKeys) {
      if (r.raw("model", k)) r.fail("model", k, "only valid with preset = inline");
    }
    if (auto n = r.integer("model", "N")) {
      if (*n < 1 || *n > 1000000) r.fail("model", "N", "must be between 1 and 1000000");
      m.N = static_cast<int>(*n);
    }
    return;
  }
  for (const auto& s : r.list("model", "coefficients")) {
    try {
      m.coefficients.push_back(parse_complex(s));
    } catch (const ConfigError& e) {
      r.fail("model", "coefficients", e.what());
    }
  }
  for (const auto& s : r.list("model", "exponents")) {
    double v = 0.0;
    if (!parse_real(s, v)) r.fail("model", "exponents", "bad number '" + s + "'");
    m.exponents.push_back(v);
  }
  if (m.coefficients.empty()) r.fail("model", "coefficients", "required for preset = inline");
  if (m.exponents.size() != m.coefficients.size()) {
    r.fail("model", "exponents", "need one exponent per coefficient");
  }
  m.N = static_cast<int>(m.coefficients.size());
  if (auto n = r.integer("model", "N"); n && *n != m.N) {
    r.fail("model", "N", "does not match the number of coefficients");
  }
  if (auto v = r.real("model", "envelope_C")) m.envelopeC = *v;
  if (auto v = r.real("model", "envelope_p")) m.envelopeP = *v;
  const auto lambda = r.real("model", "lambda");
  if (!lambda) r.fail("model", "lambda", "required for preset = inline");
  m.lambda = *lambda;
  const auto delta = r.real("model", "delta");
  if (!delta) r.fail("model", "delta", "required for preset = inline");
  m.delta = *delta;
  for (const auto& s : r.list("model", "omega")) {
    const auto colon = s.find(':');
    double alpha = 0.0, beta = 0.0;
    if (colon == std::string::npos || !parse_real(trim(s.substr(0, colon)), alpha) ||
        !parse_real(trim(s.substr(colon + 1)), beta)) {
      r.fail("model", "omega", "expected alpha:beta pairs, got '" + s + "'");
    }
    m.omega.push_back({alpha, beta});
  }
  if (m.omega.empty()) r.fail("model", "omega", "required for preset = inline");
}

void check_model(const Reader& r, RunConfig& c) {
  std::optional<ApproximationModel> model;
  try {
    model.emplace(build_model(c.model));
  } catch (const Error& e) {
    const std::string key = c.model.preset == "zeta" ? "N" : "exponents";
    r.fail("model", key, std::string("validation error: ") + e.what());
  }
  for (const auto& v : validate(*model)) {
    if (tolerated(v.code)) {
      c.warnings.push_back(v.code + ": " + v.message);
      continue;
    }
    const std::string key = violation_key(v.code);
    r.fail("model", key.substr(6), "validation error (" + v.code + "): " + v.message);
  }
}

void parse_command(const Reader& r, RunConfig& c) {
  CommandParams& p = c.command;
  const auto name = r.raw("command", "command");
  if (!name) r.fail("command", "command", "required");
  p.name = *name;
  if (!kCommands.count(p.name)) r.fail("command", "command", "unknown command '" + p.name + "'");
  if (auto t = r.raw("command", "target")) p.target = *t;
  if (p.name == "verify") {
    if (!kTargets.count(p.target)) {
      r.fail("command", "target", "verify needs one of spira, count, cluster, critical-zero, "
                                  "critical, strip; got '" + p.target + "'");
    }
  } else if (!p.target.empty()) {
    r.fail("command", "target", "only valid with command = verify");
  }
  if (auto v = r.complex("command", "a")) p.a = *v;
  if (auto v = r.complex("command", "s")) p.s = *v;
  if (auto v = r.real("command", "T")) p.T = *v;
  if (auto v = r.real("command", "U")) p.U = *v;
  if (auto v = r.real("command", "eps")) p.eps = *v;
  p.sigmaBound = r.real("command", "sigma_bound");
  p.sigmaLeft = r.real("command", "sigma_left");
  p.sigmaRight = r.real("command", "sigma_right");
  if (auto v = r.real("command", "sigma")) p.sigma = *v;
  if (auto v = r.integer("command", "grid_points")) {
    if (*v < 1 || *v > 10000000) r.fail("command", "grid_points", "must be between 1 and 1e7");
    p.gridPoints = static_cast<int>(*v);
  }
  if (auto v = r.real("command", "hit_tol")) p.hitTol = *v;
  p.gamma = r.real("command", "gamma");
  if (auto v = r.real("command", "radius")) p.radius = *v;
  if (auto v = r.integer("command", "seed")) {
    if (*v < 0) r.fail("command", "seed", "must be non-negative");
    p.seed = static_cast<std::uint64_t>(*v);
  }
  if (auto v = r.real("command", "tolerance")) p.tolerance = *v;
  if (auto v = r.real("command", "max_fraction")) p.maxFraction = *v;
  if (auto v = r.real("command", "min_ratio")) p.minRatio = *v;
  if (auto v = r.integer("command", "workers")) {
    if (*v < 1 || *v > 4096) r.fail("command", "workers", "must be between 1 and 4096");
    c.workers = static_cast<int>(*v);
  }

  if (!(p.T > 0.0)) r.fail("command", "T", "must be positive");
  if (!(p.U > 0.0)) r.fail("command", "U", "must be positive");
  if (!(p.eps > 0.0)) r.fail("command", "eps", "must be positive");
  if (p.sigmaBound && !(*p.sigmaBound > 0.0)) r.fail("command", "sigma_bound", "must be positive");
  if (p.sigmaLeft && p.sigmaRight && !(*p.sigmaLeft < *p.sigmaRight)) {
    r.fail("command", "sigma_right", "must exceed sigma_left");
  }
  if (!(p.hitTol > 0.0)) r.fail("command", "hit_tol", "must be positive");
  if (p.gamma && !(*p.gamma > 0.0)) r.fail("command", "gamma", "must be positive");
  if (!(p.radius > 0.0)) r.fail("command", "radius", "must be positive");
  if (!(p.tolerance > 0.0)) r.fail("command", "tolerance", "must be positive");
  if (!(p.maxFraction >= 0.0 && p.maxFraction <= 1.0)) {
    r.fail("command", "max_fraction", "must lie in [0, 1]");
  }
  if (!(p.minRatio > 0.0 && p.minRatio <= 1.0)) r.fail("command", "min_ratio", "must lie in (0, 1]");
  if (p.name == "eval" && !(p.s.imag() != 0.0)) {
    r.fail("command", "s", "must be off the real axis");
  }
}

void check_command(const Reader& r, const RunConfig& c) {
  const CommandParams& p = c.command;
  const bool needs_real = p.name == "scan-line" ||
                          (p.name == "verify" && (p.target == "spira" || p.target == "critical" ||
                                                  p.target == "critical-zero"));
  if (needs_real) {
    for (const Complex& a : c.model.coefficients) {
      if (a.imag() != 0.0) {
        r.fail("model", "coefficients", "this command requires real coefficients");
      }
    }
  }
  if (p.name == "verify" && p.target == "critical" && p.a == Complex(0.0)) {
    r.fail("command", "a", "verify critical needs a non-zero a");
  }
  if (p.name == "verify" && p.target == "critical-zero" && p.a != Complex(0.0)) {
    r.fail("command", "a", "verify critical-zero counts zeros; a must be 0");
  }
  if (p.name == "verify" && p.target == "spira" &&
      (c.model.preset != "zeta" || (c.model.N != 1 && c.model.N != 2))) {
    r.fail("model", "N", "verify spira needs the zeta preset with N = 1 or 2");
  }
}

void parse_output(const Reader& r, RunConfig& c) {
  if (auto v = r.raw("output", "directory")) c.output.directory = *v;
  if (auto v = r.raw("output", "prefix")) c.output.prefix = *v;
  if (c.output.directory.empty()) r.fail("output", "directory", "must not be empty");
  if (c.output.prefix.empty() || c.output.prefix.find('/') != std::string::npos) {
    r.fail("output", "prefix", "must be a non-empty file name without '/'");
  }
}

}  // namespace

ApproximationModel build_model(const ModelSource& source) {
  if (source.preset == "zeta") {
    const ApproximationModel zeta = make_zeta_preset(source.N);
    return ApproximationModel(zeta.series(), zeta.fe(), source.sigma0);
  }
  Eigen::VectorXcd a(static_cast<Eigen::Index>(source.coefficients.size()));
  Eigen::VectorXd lam(static_cast<Eigen::Index>(source.exponents.size()));
  for (std::size_t k = 0; k < source.coefficients.size(); ++k) a[k] = source.coefficients[k];
  for (std::size_t k = 0; k < source.exponents.size(); ++k) lam[k] = source.exponents[k];
  return ApproximationModel(SeriesSpec(a, lam, Envelope{source.envelopeC, source.envelopeP}),
                            FunctionalEquation(source.lambda, source.delta, source.omega),
                            source.sigma0);
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config parse error (line " + std::to_string(e.line()) +
                          "): " + e.message(),
                      {}, static_cast<int>(e.line()));
  }
  const auto lines = key_lines(text);
  const Reader r(tree, lines);
  for (const auto& [section, child] : tree) {
    const auto known = kKeys.find(section);
    if (known == kKeys.end()) {
      if (child.empty()) r.fail("", section, "key outside of any section");
      throw ConfigError("config error: unknown section [" + section + "]", section);
    }
    for (const auto& [key, value] : child) {
      if (!known->second.count(key)) r.fail(section, key, "unknown key");
    }
  }
  RunConfig c;
  parse_model(r, c);
  check_model(r, c);
  parse_command(r, c);
  check_command(r, c);
  parse_output(r, c);
  return c;
}

std::string serialize(const RunConfig& c) {
  std::ostringstream out;
  const ModelSource& m = c.model;
  out << "[model]\n";
  out << "preset = " << m.preset << "\n";
  if (m.preset == "zeta") {
    out << "N = " << m.N << "\n";
  } else {
    out << "coefficients = ";
    for (std::size_t k = 0; k < m.coefficients.size(); ++k) {
      out << (k ? ", " : "") << format_complex(m.coefficients[k]);
    }
    out << "\nexponents = ";
    for (std::size_t k = 0; k < m.exponents.size(); ++k) {
      out << (k ? ", " : "") << format_double(m.exponents[k]);
    }
    out << "\nenvelope_C = " << format_double(m.envelopeC) << "\n";
    out << "envelope_p = " << format_double(m.envelopeP) << "\n";
    out << "lambda = " << format_double(m.lambda) << "\n";
    out << "delta = " << format_double(m.delta) << "\n";
    out << "omega = ";
    for (std::size_t k = 0; k < m.omega.size(); ++k) {
      out << (k ? ", " : "") << format_double(m.omega[k].alpha) << ":"
          << format_double(m.omega[k].beta);
    }
    out << "\n";
  }
  out << "sigma0 = " << format_double(m.sigma0) << "\n\n";

  const CommandParams& p = c.command;
  out << "[command]\n";
  out << "command = " << p.name << "\n";
  if (!p.target.empty()) out << "target = " << p.target << "\n";
  out << "a = " << format_complex(p.a) << "\n";
  out << "s = " << format_complex(p.s) << "\n";
  out << "T = " << format_double(p.T) << "\n";
  out << "U = " << format_double(p.U) << "\n";
  out << "eps = " << format_double(p.eps) << "\n";
  if (p.sigmaBound) out << "sigma_bound = " << format_double(*p.sigmaBound) << "\n";
  if (p.sigmaLeft) out << "sigma_left = " << format_double(*p.sigmaLeft) << "\n";
  if (p.sigmaRight) out << "sigma_right = " << format_double(*p.sigmaRight) << "\n";
  out << "sigma = " << format_double(p.sigma) << "\n";
  out << "grid_points = " << p.gridPoints << "\n";
  out << "hit_tol = " << format_double(p.hitTol) << "\n";
  if (p.gamma) out << "gamma = " << format_double(*p.gamma) << "\n";
  out << "radius = " << format_double(p.radius) << "\n";
  out << "seed = " << p.seed << "\n";
  out << "tolerance = " << format_double(p.tolerance) << "\n";
  out << "max_fraction = " << format_double(p.maxFraction) << "\n";
  out << "min_ratio = " << format_double(p.minRatio) << "\n";
  out << "workers = " << c.workers << "\n\n";

  out << "[output]\n";
  out << "directory = " << c.output.directory << "\n";
  out << "prefix = " << c.output.prefix << "\n";
  return out.str();
}

std::vector<std::pair<std::string, std::string>> config_header(const RunConfig& c) {
  const ApproximationModel model = build_model(c.model);
  const auto& series = model.series();
  std::vector<std::pair<std::string, std::string>> h;
  h.emplace_back("preset", c.model.preset);
  h.emplace_back("N", std::to_string(series.size()));
  h.emplace_back("A", format_double(model.fe().A()));
  h.emplace_back("B", format_double(model.fe().B()));
  h.emplace_back("lambda", format_double(model.fe().lambda()));
  h.emplace_back("delta", format_double(model.fe().delta()));
  h.emplace_back("sigma0", format_double(model.sigma0()));
  h.emplace_back("real_coefficients", model.real_coefficients() ? "true" : "false");
  h.emplace_back("command", c.command.name);
  if (!c.command.target.empty()) h.emplace_back("target", c.command.target);
  h.emplace_back("a", format_complex(c.command.a));
  h.emplace_back("psi_case", psi_case_label(psi_case(c.command.a, series.coefficients()[0])));
  h.emplace_back("gamma",
                 format_double(c.command.gamma ? *c.command.gamma : default_gamma(model)));
  h.emplace_back("monotone_onset", format_double(monotone_onset(model.fe())));
  h.emplace_back("T", format_double(c.command.T));
  h.emplace_back("U", format_double(c.command.U));
  h.emplace_back("workers", std::to_string(c.workers));
  h.emplace_back("seed", std::to_string(c.command.seed));
  for (const auto& w : c.warnings) h.emplace_back("warning", w);
  return h;
}

}  // namespace zetapprox
