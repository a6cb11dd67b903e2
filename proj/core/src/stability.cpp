#include "dporo/stability.hpp"

#include <cmath>

namespace dporo {

const char* to_string(StabilityRegime r) {
  switch (r) {
    case StabilityRegime::Exponential: return "Exponential";
    case StabilityRegime::NonExpCase1: return "NonExpCase1";
    case StabilityRegime::NonExpCase2: return "NonExpCase2";
    case StabilityRegime::NonExpCase3: return "NonExpCase3";
  }
  return "?";
}

double chi0(const MaterialParams& p) {
  const double s1 = p.mu * p.kappa1 / p.rho - p.alpha;
  const double s2 = p.mu * p.kappa2 / p.rho - p.gamma;
  return s1 * s2 - p.beta * p.beta + 0.0;  // + 0.0 folds -0 into +0
}

double chi1(const MaterialParams& p) {
  const double s1 = p.mu * p.kappa1 / p.rho - p.alpha;
  const double s2 = p.mu * p.kappa2 / p.rho - p.gamma;
  return p.d * p.d * s1 + p.b * p.b * s2 + 2.0 * p.b * p.d * p.beta + 0.0;
}

StabilityClass classify(const MaterialParams& p, double tol) {
  StabilityClass c{};
  c.chi0 = chi0(p);
  c.chi1 = chi1(p);
  c.zero_tolerance = tol;

  const double s1 = std::abs(p.mu * p.kappa1 / p.rho) + std::abs(p.alpha);
  const double s2 = std::abs(p.mu * p.kappa2 / p.rho) + std::abs(p.gamma);
  const double scale0 = std::max(1.0, s1 * s2 + p.beta * p.beta);
  const double scale1 = std::max(1.0, p.d * p.d * s1 + p.b * p.b * s2 +
                                          2.0 * std::abs(p.b * p.d * p.beta));

  const bool chi0_zero = std::abs(c.chi0) <= tol * scale0;
  const bool chi1_zero = std::abs(c.chi1) <= tol * scale1;
  if (chi0_zero)
    c.regime = chi1_zero ? StabilityRegime::NonExpCase2 : StabilityRegime::Exponential;
  else
    c.regime = chi1_zero ? StabilityRegime::NonExpCase3 : StabilityRegime::NonExpCase1;
  return c;
}

std::optional<std::pair<double, double>> check_Hprime(const MaterialParams& p) {
  const double speed = p.mu / p.rho;
  const auto matches = [speed](double value) {
    return std::abs(speed - value) <= 1e-9 * std::max({1.0, std::abs(speed), std::abs(value)});
  };

  if (p.beta != 0.0) {
    if (p.b == 0.0 || p.d == 0.0) return std::nullopt;
    const double lhs = (p.b * p.alpha + p.d * p.beta) / (p.b * p.kappa1);
    const double rhs = (p.b * p.beta + p.d * p.gamma) / (p.d * p.kappa2);
    if (matches(lhs) && matches(rhs)) return std::make_pair(p.b, p.d);
    return std::nullopt;
  }

  if (p.b != 0.0 && matches(p.alpha / p.kappa1)) return std::make_pair(1.0, 0.0);
  if (p.d != 0.0 && matches(p.gamma / p.kappa2)) return std::make_pair(0.0, 1.0);
  return std::nullopt;
}

double theoretical_probe_exponent(StabilityRegime r) {
  switch (r) {
    case StabilityRegime::Exponential: return 0.0;
    case StabilityRegime::NonExpCase1: return 1.0;
    case StabilityRegime::NonExpCase2: return 1.0;
    case StabilityRegime::NonExpCase3: return 2.0;
  }
  return 0.0;
}

} // namespace dporo
