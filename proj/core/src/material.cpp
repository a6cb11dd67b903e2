#include "dporo/material.hpp"

#include <cmath>
#include <sstream>

namespace dporo {

const char* to_string(BoundaryKind bc) {
  return bc == BoundaryKind::MixedA2 ? "A2" : "A3";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

} // namespace

ValidationReport validate_positivity(const MaterialParams& p) {
  ValidationReport r;

  // The block structure makes the minors cheap: the elastic 3x3 block
  // {mu, b, d; b, a1, a3; d, a3, a2} and the gradient 2x2 block
  // {alpha, beta; beta, gamma} do not mix.
  const double m1 = p.mu;
  const double m2 = p.mu * p.alpha1 - p.b * p.b;
  const double det3 = p.mu * (p.alpha1 * p.alpha2 - p.alpha3 * p.alpha3) -
                      p.b * (p.b * p.alpha2 - p.alpha3 * p.d) +
                      p.d * (p.b * p.alpha3 - p.alpha1 * p.d);
  const double m4 = det3 * p.alpha;
  const double m5 = det3 * (p.alpha * p.gamma - p.beta * p.beta);
  r.minors = {m1, m2, det3, m4, m5};

  r.schur_det = p.mu != 0.0
      ? (p.alpha1 - p.b * p.b / p.mu) * (p.alpha2 - p.d * p.d / p.mu) -
        (p.alpha3 - p.b * p.d / p.mu) * (p.alpha3 - p.b * p.d / p.mu)
      : 0.0;
  r.alpha1mu_minus_b2 = p.alpha1 * p.mu - p.b * p.b;
  r.alpha2mu_minus_d2 = p.alpha2 * p.mu - p.d * p.d;
  r.alpha1alpha2_minus_alpha3sq = p.alpha1 * p.alpha2 - p.alpha3 * p.alpha3;
  r.alphagamma_minus_beta2 = p.alpha * p.gamma - p.beta * p.beta;

  // Row scales of the leading blocks, used to decide when a minor is close
  // enough to zero that the strict test is numerically meaningless.
  const double rows[5][5] = {
      {p.mu, p.b, p.d, 0, 0},
      {p.b, p.alpha1, p.alpha3, 0, 0},
      {p.d, p.alpha3, p.alpha2, 0, 0},
      {0, 0, 0, p.alpha, p.beta},
      {0, 0, 0, p.beta, p.gamma},
  };

  r.positivity_ok = true;
  for (int k = 0; k < 5; ++k) {
    double scale = 1.0;
    for (int i = 0; i <= k; ++i) {
      double rmax = 0.0;
      for (int j = 0; j <= k; ++j) rmax = std::max(rmax, std::abs(rows[i][j]));
      scale *= std::max(rmax, 1e-300);
    }
    scale = std::max(scale, 1e-300);
    if (!(r.minors[static_cast<size_t>(k)] > 0.0)) {
      r.positivity_ok = false;
      r.messages.push_back("energy matrix leading minor " +
                           std::to_string(k + 1) + " is not positive (value " +
                           fmt(r.minors[static_cast<size_t>(k)]) + ")");
      if (k == 1) {
        r.messages.push_back("definiteness condition alpha1*mu - b^2 > 0 fails (value " +
                             fmt(r.alpha1mu_minus_b2) + ")");
      } else if (k == 2) {
        r.messages.push_back("definiteness condition on the elastic coupling block fails: "
                             "(alpha1 - b^2/mu)(alpha2 - d^2/mu) - (alpha3 - b*d/mu)^2 = " +
                             fmt(r.schur_det));
      } else if (k == 4) {
        r.messages.push_back("definiteness condition alpha*gamma - beta^2 > 0 fails (value " +
                             fmt(r.alphagamma_minus_beta2) + ")");
      }
    } else if (std::abs(r.minors[static_cast<size_t>(k)]) <= 1e-12 * scale) {
      r.messages.push_back("energy matrix leading minor " +
                           std::to_string(k + 1) + " is marginal (value " +
                           fmt(r.minors[static_cast<size_t>(k)]) + ")");
    }
  }
  return r;
}

bool validate_damping(const MaterialParams& p) {
  const double s = p.tau2 + p.tau3;
  return p.tau1 > 0.0 && 4.0 * p.tau1 * p.tau4 > s * s;
}

ValidationReport validate_all(const MaterialParams& p, BoundaryKind) {
  ValidationReport r = validate_positivity(p);

  r.fields_ok = true;
  const struct { const char* name; double value; } positives[] = {
      {"rho", p.rho},       {"mu", p.mu},         {"kappa1", p.kappa1},
      {"kappa2", p.kappa2}, {"alpha", p.alpha},   {"gamma", p.gamma},
      {"alpha1", p.alpha1}, {"alpha2", p.alpha2}, {"length", p.length},
  };
  for (const auto& f : positives) {
    if (!(f.value > 0.0) || !std::isfinite(f.value)) {
      r.fields_ok = false;
      r.messages.push_back(std::string(f.name) + " must be positive (value " +
                           fmt(f.value) + ")");
    }
  }

  r.damping_ok = validate_damping(p);
  if (!r.damping_ok) {
    r.messages.push_back(
        "damping condition fails: need tau1 > 0 and 4*tau1*tau4 > (tau2 + tau3)^2 "
        "(tau1 " + fmt(p.tau1) + ", 4*tau1*tau4 " + fmt(4.0 * p.tau1 * p.tau4) +
        ", (tau2 + tau3)^2 " + fmt((p.tau2 + p.tau3) * (p.tau2 + p.tau3)) + ")");
  }

  r.coupling_ok = !(p.b == 0.0 && p.d == 0.0);
  if (!r.coupling_ok) {
    r.messages.push_back("elastic-porous coupling is absent: b and d are both zero");
  }

  return r;
}

double wavenumber(const MaterialParams& p, int n) {
  return static_cast<double>(n) * std::numbers::pi / p.length;
}

} // namespace dporo
