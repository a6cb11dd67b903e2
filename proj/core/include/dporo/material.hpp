#pragma once

#include <array>
#include <numbers>
#include <string>
#include <vector>

namespace dporo {

// Coefficients of the coupled elastic / double-porosity wave system
//
//   rho    u_tt = mu    u_xx + b phi_x + d psi_x
//   kappa1 phi_tt = alpha phi_xx + beta psi_xx - b u_x
//                   - alpha1 phi - alpha3 psi - tau1 phi_t - tau2 psi_t
//   kappa2 psi_tt = beta  phi_xx + gamma psi_xx - d u_x
//                   - alpha3 phi - alpha2 psi - tau3 phi_t - tau4 psi_t
//
// posed on (0, length). u is the elastic displacement, phi and psi the two
// volume-fraction fields, tau1..tau4 the visco-porous damping coefficients.
struct MaterialParams {
  double rho = 1.0;
  double mu = 1.0;
  double b = 0.0;
  double d = 0.0;
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 1.0;
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double alpha3 = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau3 = 0.0;
  double tau4 = 0.0;
  double length = std::numbers::pi;

  bool operator==(const MaterialParams&) const = default;
};

// Which pair of mixed boundary conditions closes the system.
//   MixedA2:  u_x = 0, phi = 0, psi = 0 at both ends  (u cosine, phi/psi sine)
//   MixedA3:  u = 0, phi_x = 0, psi_x = 0 at both ends (u sine, phi/psi cosine)
enum class BoundaryKind { MixedA2, MixedA3 };

const char* to_string(BoundaryKind bc);

struct ValidationReport {
  bool positivity_ok = false;
  bool damping_ok = false;
  bool coupling_ok = false;
  bool fields_ok = false;
  // Leading principal minors of the 5x5 energy coefficient matrix in the
  // variables (u_x, phi, psi, phi_x, psi_x); all five must be positive for
  // the energy functional to be a norm.
  std::array<double, 5> minors{};
  // Derived definiteness diagnostics (Schur complement route).
  double schur_det = 0.0;            // (a1 - b^2/mu)(a2 - d^2/mu) - (a3 - bd/mu)^2
  double alpha1mu_minus_b2 = 0.0;
  double alpha2mu_minus_d2 = 0.0;
  double alpha1alpha2_minus_alpha3sq = 0.0;
  double alphagamma_minus_beta2 = 0.0;
  std::vector<std::string> messages;

  bool ok() const {
    return positivity_ok && damping_ok && coupling_ok && fields_ok;
  }
};

// Checks the five leading principal minors of the energy coefficient matrix
//
//   [ mu  b   d   0     0    ]
//   [ b   a1  a3  0     0    ]
//   [ d   a3  a2  0     0    ]
//   [ 0   0   0   alpha beta ]
//   [ 0   0   0   beta  gamma]
//
// strictly (> 0). Minors within 1e-12 of zero relative to their row scale are
// additionally flagged as marginal in the messages. Fills only the positivity
// fields of the report.
ValidationReport validate_positivity(const MaterialParams& p);

// tau1 > 0 and 4 tau1 tau4 > (tau2 + tau3)^2, both strict. This makes the
// dissipation quadratic form negative definite in (phi_t, psi_t).
bool validate_damping(const MaterialParams& p);

// Aggregates positivity, damping, coupling (not both b and d zero) and basic
// field positivity (rho, mu, kappa1, kappa2, alpha, gamma, alpha1, alpha2,
// length all > 0) into one report.
ValidationReport validate_all(const MaterialParams& p, BoundaryKind bc);

// Wavenumber of mode n >= 1: n*pi/length.
double wavenumber(const MaterialParams& p, int n);

} // namespace dporo
