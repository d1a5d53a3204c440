#include "zetapprox/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "zetapprox/error.hpp"

namespace zetapprox {

SeriesSpec::SeriesSpec(Eigen::VectorXcd coefficients, Eigen::VectorXd exponents,
                       Envelope envelope)
    : coefficients_(std::move(coefficients)),
      exponents_(std::move(exponents)),
      envelope_(envelope) {
  if (coefficients_.size() == 0) {
    throw InvalidArgument("series must have at least one term");
  }
  if (coefficients_.size() != exponents_.size()) {
    throw InvalidArgument("coefficient and exponent counts differ");
  }
  for (Eigen::Index n = 0; n < exponents_.size(); ++n) {
    if (!std::isfinite(exponents_[n]) || exponents_[n] <= 0.0) {
      throw InvalidArgument("exponents must be finite and positive");
    }
  }
  log_exponents_ = exponents_.array().log();
}

bool operator==(const SeriesSpec& lhs, const SeriesSpec& rhs) {
  return lhs.coefficients_.size() == rhs.coefficients_.size() &&
         lhs.coefficients_ == rhs.coefficients_ && lhs.exponents_ == rhs.exponents_ &&
         lhs.envelope_ == rhs.envelope_;
}

std::pair<double, double> gamma_constants(const std::vector<GammaFactor>& omega) {
  double A = 0.0;
  double B = 0.0;
  for (const auto& g : omega) {
    A += g.alpha;
    B += g.alpha * std::log(g.alpha) - g.alpha;
  }
  return {A, B};
}

FunctionalEquation::FunctionalEquation(double lambda, double delta,
                                       std::vector<GammaFactor> omega)
    : lambda_(lambda), delta_(delta), omega_(std::move(omega)) {
  if (!std::isfinite(lambda_) || !std::isfinite(delta_)) {
    throw InvalidArgument("lambda and delta must be finite");
  }
  std::tie(A_, B_) = gamma_constants(omega_);
}

bool operator==(const FunctionalEquation& lhs, const FunctionalEquation& rhs) {
  return lhs.lambda_ == rhs.lambda_ && lhs.delta_ == rhs.delta_ && lhs.omega_ == rhs.omega_;
}

ApproximationModel::ApproximationModel(SeriesSpec series, FunctionalEquation fe,
                                       double sigma0)
    : series_(std::move(series)), fe_(std::move(fe)), sigma0_(sigma0) {
  real_coefficients_ = (series_.coefficients().imag().array() == 0.0).all();
}

bool operator==(const ApproximationModel& lhs, const ApproximationModel& rhs) {
  return lhs.series_ == rhs.series_ && lhs.fe_ == rhs.fe_ && lhs.sigma0_ == rhs.sigma0_;
}

ApproximationModel make_zeta_preset(int N) {
  if (N < 1) {
    throw InvalidArgument("zeta preset needs N >= 1");
  }
  Eigen::VectorXcd a = Eigen::VectorXcd::Ones(N);
  Eigen::VectorXd lam = Eigen::VectorXd::LinSpaced(N, 1.0, static_cast<double>(N));
  FunctionalEquation fe(std::sqrt(std::numbers::pi), 1.0, {GammaFactor{0.5, 0.0}});
  return ApproximationModel(SeriesSpec(std::move(a), std::move(lam), Envelope{1.0, 1.0}),
                            std::move(fe), 2.0);
}

ApproximationModel shift_constant(const ApproximationModel& model, Complex a) {
  Eigen::VectorXcd coeffs = model.series().coefficients();
  coeffs[0] -= a;
  return ApproximationModel(
      SeriesSpec(std::move(coeffs), model.series().exponents(), model.series().envelope()),
      model.fe(), model.sigma0());
}

namespace {

std::string index_message(const char* what, Eigen::Index n) {
  std::ostringstream os;
  os << what << " at n=" << (n + 1);
  return os.str();
}

}  // namespace

std::vector<Violation> validate(const ApproximationModel& model) {
  std::vector<Violation> out;
  const auto& series = model.series();
  const auto& a = series.coefficients();
  const auto& lam = series.exponents();
  const Eigen::Index N = series.size();

  if (lam[0] != 1.0) {
    out.push_back({"exponent_first", "exponents must start with lambda_1 = 1"});
  }
  for (Eigen::Index n = 0; n < N; ++n) {
    if (lam[n] < 1.0) {
      out.push_back({"exponent_below_one", index_message("exponents below 1", n)});
      break;
    }
  }
  for (Eigen::Index n = 1; n < N; ++n) {
    if (!(lam[n] > lam[n - 1])) {
      out.push_back({"exponents_not_increasing", "exponents not strictly increasing"});
      break;
    }
  }
  if (N < 3) {
    out.push_back({"too_few_terms", "requires N >= 3 (two non-constant terms)"});
  }
  if (N >= 2 && a[1] == Complex(0.0)) {
    out.push_back({"a2_zero", "requires a2 != 0"});
  }
  if (N >= 3 && a[2] == Complex(0.0)) {
    out.push_back({"a3_zero", "requires a3 != 0"});
  }

  const auto& env = series.envelope();
  if (!(env.C > 0.0) || !(env.p >= 0.0)) {
    out.push_back({"envelope_invalid", "envelope needs C > 0 and p >= 0"});
  } else {
    for (Eigen::Index n = 0; n < N; ++n) {
      const double bound = env.C * std::pow(static_cast<double>(n + 1), env.p);
      if (std::abs(a[n]) > bound) {
        out.push_back({"coefficient_envelope", index_message("|a_n| exceeds C n^p", n)});
        break;
      }
    }
    for (Eigen::Index n = 0; n < N; ++n) {
      const double bound = env.C * std::pow(static_cast<double>(n + 1), env.p);
      if (lam[n] > bound) {
        out.push_back({"exponent_envelope", index_message("exponents exceed C n^p", n)});
        break;
      }
    }
  }

  const auto& fe = model.fe();
  if (!(fe.lambda() > 0.0)) {
    out.push_back({"lambda_nonpositive", "functional equation needs lambda > 0"});
  }
  if (fe.omega().empty()) {
    out.push_back({"omega_empty", "Gamma product must be non-empty"});
  }
  for (const auto& g : fe.omega()) {
    if (!(g.alpha > 0.0) || !std::isfinite(g.beta)) {
      out.push_back({"gamma_alpha", "Gamma factors need alpha > 0 and finite beta"});
      break;
    }
  }
  const auto [A, B] = gamma_constants(fe.omega());
  if (A != fe.A() || B != fe.B()) {
    out.push_back({"gamma_constants", "stored A, B disagree with Omega"});
  }

  const bool real = (a.imag().array() == 0.0).all();
  if (real != model.real_coefficients()) {
    out.push_back({"real_flag", "realCoefficients flag inconsistent"});
  }
  return out;
}

double growth_exponent(const ApproximationModel& model) {
  return model.series().envelope().p;
}

double default_gamma(const ApproximationModel& model) {
  return growth_exponent(model) / (2.0 * model.fe().A()) + 0.1;
}

}  // namespace zetapprox
