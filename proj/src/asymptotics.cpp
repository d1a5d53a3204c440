#include "zetapprox/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "zetapprox/error.hpp"

namespace zetapprox {

PredictionInput prediction_input(const ApproximationModel& model, Complex a, double T, double U,
                                 std::optional<double> gamma) {
  const auto& series = model.series();
  if (series.size() < 2) throw InvalidArgument("prediction_input: need at least two terms");
  PredictionInput in;
  in.A = model.fe().A();
  in.B = model.fe().B();
  in.lambda = model.fe().lambda();
  in.lambda2 = series.exponents()[1];
  in.a = a;
  in.a1 = series.coefficients()[0];
  in.T = T;
  in.U = U;
  in.N = static_cast<int>(series.size());
  in.gamma = gamma ? *gamma : default_gamma(model);
  return in;
}

PsiCase psi_case(Complex a, Complex a1) {
  const Complex zero(0.0);
  if (a != a1 && a1 == zero) return PsiCase::AOffZeroA1;
  if (a == a1 && a1 != zero) return PsiCase::AEqualsNonZeroA1;
  return PsiCase::Otherwise;
}

std::string psi_case_label(PsiCase c) {
  switch (c) {
    case PsiCase::AOffZeroA1:
      return "a != a1 = 0";
    case PsiCase::AEqualsNonZeroA1:
      return "a = a1 != 0";
    case PsiCase::Otherwise:
      break;
  }
  return "otherwise";
}

double psi_constant(Complex a, Complex a1, double lambda2) {
  if (!(lambda2 > 1.0)) throw InvalidArgument("psi_constant: lambda2 must exceed 1");
  switch (psi_case(a, a1)) {
    case PsiCase::AOffZeroA1:
      return 0.5 * std::log(lambda2);
    case PsiCase::AEqualsNonZeroA1:
      return -0.5 * std::log(lambda2);
    case PsiCase::Otherwise:
      break;
  }
  return 0.0;
}

Prediction predicted_count(const PredictionInput& in) {
  if (!(in.T > 0.0) || !(in.U >= 0.0)) {
    throw InvalidArgument("predicted_count: need T > 0 and U >= 0");
  }
  if (!(in.lambda > 0.0)) throw InvalidArgument("predicted_count: lambda must be positive");
  if (in.N < 1) throw InvalidArgument("predicted_count: N must be positive");
  constexpr double pi = std::numbers::pi;
  const double top = in.T + in.U;
  Prediction p;
  p.psi = psi_constant(in.a, in.a1, in.lambda2);
  p.value = in.A / pi * (top * std::log(top) - in.T * std::log(in.T)) +
            (in.B - std::log(in.lambda) + p.psi) / pi * in.U;
  p.scale = std::pow(static_cast<double>(in.N), in.gamma) * std::log(top);
  return p;
}

Discrepancy compare(double empirical, double predicted, double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("compare: scale must be positive");
  Discrepancy d;
  d.empirical = empirical;
  d.predicted = predicted;
  d.difference = empirical - predicted;
  d.normalized = d.difference / scale;
  return d;
}

}  // namespace zetapprox
