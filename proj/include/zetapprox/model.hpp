#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zetapprox {

using Complex = std::complex<double>;

/// Polynomial growth envelope |a_n| <= C n^p and lambda_n <= C n^p.
struct Envelope {
  double C = 1.0;
  double p = 1.0;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

/// Truncated general Dirichlet series sum_{n<=N} a_n lambda_n^{-s}.
///
/// Construction only rejects data that cannot be evaluated at all (size
/// mismatch, empty series, non-positive exponents). Everything else, such as
/// monotone exponents or a_2 != 0, is reported by validate() so degenerate
/// models stay constructible.
class SeriesSpec {
 public:
  SeriesSpec(Eigen::VectorXcd coefficients, Eigen::VectorXd exponents,
             Envelope envelope = {});

  const Eigen::VectorXcd& coefficients() const { return coefficients_; }
  const Eigen::VectorXd& exponents() const { return exponents_; }
  /// log(lambda_n), cached for evaluation.
  const Eigen::VectorXd& log_exponents() const { return log_exponents_; }
  const Envelope& envelope() const { return envelope_; }
  Eigen::Index size() const { return coefficients_.size(); }

  friend bool operator==(const SeriesSpec& lhs, const SeriesSpec& rhs);

 private:
  Eigen::VectorXcd coefficients_;
  Eigen::VectorXd exponents_;
  Eigen::VectorXd log_exponents_;
  Envelope envelope_;
};

/// One factor Gamma(alpha s + beta) of the Gamma product.
struct GammaFactor {
  double alpha = 1.0;
  double beta = 0.0;

  friend bool operator==(const GammaFactor&, const GammaFactor&) = default;
};

/// Functional equation data (lambda, delta, Omega) and the derived constants
/// A = sum alpha_i and B = sum (alpha_i log alpha_i - alpha_i).
class FunctionalEquation {
 public:
  FunctionalEquation(double lambda, double delta, std::vector<GammaFactor> omega);

  double lambda() const { return lambda_; }
  double delta() const { return delta_; }
  const std::vector<GammaFactor>& omega() const { return omega_; }
  double A() const { return A_; }
  double B() const { return B_; }

  friend bool operator==(const FunctionalEquation& lhs, const FunctionalEquation& rhs);

 private:
  double lambda_;
  double delta_;
  std::vector<GammaFactor> omega_;
  double A_;
  double B_;
};

/// Recomputes (A, B) from a Gamma product, in a fixed summation order.
std::pair<double, double> gamma_constants(const std::vector<GammaFactor>& omega);

/// zeta_N(s) = F_N(s) + G(s) F_N(delta - s).
class ApproximationModel {
 public:
  ApproximationModel(SeriesSpec series, FunctionalEquation fe, double sigma0 = 2.0);

  const SeriesSpec& series() const { return series_; }
  const FunctionalEquation& fe() const { return fe_; }
  /// True iff every a_n has zero imaginary part.
  bool real_coefficients() const { return real_coefficients_; }
  /// Abscissa of absolute convergence used for the F_N envelope check.
  double sigma0() const { return sigma0_; }
  double critical_sigma() const { return fe_.delta() / 2.0; }

  friend bool operator==(const ApproximationModel& lhs, const ApproximationModel& rhs);

 private:
  SeriesSpec series_;
  FunctionalEquation fe_;
  bool real_coefficients_;
  double sigma0_;
};

/// The Riemann zeta approximation: a_n = 1, lambda_n = n, delta = 1,
/// lambda = sqrt(pi), Omega(s) = Gamma(s/2).
ApproximationModel make_zeta_preset(int N);

/// Replaces a_1 by a_1 - a.
ApproximationModel shift_constant(const ApproximationModel& model, Complex a);

struct Violation {
  std::string code;
  std::string message;
};

/// Empty iff every model invariant holds.
std::vector<Violation> validate(const ApproximationModel& model);

/// mu = p, the growth exponent of |F_N(s)| in |sigma|.
double growth_exponent(const ApproximationModel& model);

/// Smallest admissible error exponent 2 A gamma > mu, plus 0.1.
double default_gamma(const ApproximationModel& model);

}  // namespace zetapprox
