#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "dporo/material.hpp"
#include "dporo/stability.hpp"

namespace dporo {

// Single-mode resolvent system at real frequency lambda, mode n, for a unit
// elastic forcing. With u = A sin(kx), phi = B cos(kx), psi = C cos(kx) the
// amplitudes satisfy
//   [ p1   -bk   -dk ] [A]   [1]
//   [ -bk   p2    p4 ] [B] = [0]
//   [ -dk   p5    p3 ] [C]   [0]
// where
//   p1 = rho lambda^2 - mu k^2
//   p2 = kappa1 lambda^2 - k^2 alpha - (alpha1 - i lambda tau1)
//   p3 = kappa2 lambda^2 - k^2 gamma - (alpha2 - i lambda tau4)
//   p4 = -beta k^2 - (alpha3 - i lambda tau2)
//   p5 = -beta k^2 - (alpha3 - i lambda tau3)
//   K1 = p2 p3 - p4 p5
//   K2 = b k^2 (d p4 - b p3) - d k^2 (d p2 - b p5)
// and in closed form A = K1 / (p1 K1 + K2).
//
// Velocities complete the six-component state as (u, -i lambda u, phi,
// -i lambda phi, psi, -i lambda psi); equivalently the state solves
// (i lambda I + G_n) U = F for the mode-n generator G_n, i.e. it probes the
// generator's resolvent at -i lambda.
struct ModalResolventSystem {
  double lambda = 0.0;
  int n = 0;
  double k = 0.0;
  std::complex<double> p1, p2, p3, p4, p5;
  std::complex<double> K1, K2;
  bool solved = false;
  std::complex<double> A, B, C;
};

ModalResolventSystem build_system(const MaterialParams& p, double lambda, int n);

// Same coefficients with the wavenumber given directly; used for asymptotic
// checks along the curve k^2 = rho lambda^2 / mu where p1 vanishes.
ModalResolventSystem build_system_at(const MaterialParams& p, double lambda, double k);

// Solves the 3x3 system by elimination and cross-checks the closed form.
// Throws SingularSystemError when |p1 K1 + K2| <= 1e-14 * scale.
ModalResolventSystem solve_modal(const MaterialParams& p, double lambda, int n);

// Energy norm of the solved six-component state:
//   ||U||^2 = (L/2) [ rho lambda^2 |A|^2 + kappa1 lambda^2 |B|^2
//                     + kappa2 lambda^2 |C|^2 + mu k^2 |A|^2
//                     + (alpha k^2 + alpha1) |B|^2 + (gamma k^2 + alpha2) |C|^2
//                     + 2 (beta k^2 + alpha3) Re(B conj C)
//                     + 2 b k Re(A conj B) + 2 d k Re(A conj C) ]
double state_norm(const MaterialParams& p, const ModalResolventSystem& sys);

struct ProbePoint {
  int n = 0;
  double lambda = 0.0;
  double norm = 0.0;
  std::complex<double> A, B, C;
};

struct ProbeResult {
  std::vector<ProbePoint> points;
  std::vector<int> skipped;  // modes whose system was singular
  double exponent = 0.0;       // slope of log||U|| vs log lambda, n >= 16 only
  double exponent_full = 0.0;  // same fit over every probed point
  double residual = 0.0;       // rms residual of the tail fit
  double residual_full = 0.0;
  double theoretical_exponent = 0.0;  // from the chi classification
};

// Evaluates the resolvent on the elastic resonance sequence
// lambda_n = k_n sqrt(mu/rho) (exactly where p1 vanishes) for each n in
// n_list (increasing, n >= 1) and fits the growth exponent of ||U||.
ProbeResult probe_sequence(const MaterialParams& p, std::span<const int> n_list);

// Leading coefficients of K1 and K2 along the p1-root curve,
//   K1 = k1_l4 lambda^4 + i k1_l3 lambda^3 + O(lambda^2)
//   K2 = k2_l4 lambda^4 + i k2_l3 lambda^3 + O(lambda^2)
// with
//   k1_l4 = (rho/mu)^2 chi0
//   k1_l3 = (rho/mu) [ (mu kappa1/rho - alpha) tau4
//                      + (mu kappa2/rho - gamma) tau1 + beta (tau2 + tau3) ]
//   k2_l4 = -(rho/mu)^2 chi1
//   k2_l3 = (rho/mu) [ b d (tau2 + tau3) - b^2 tau4 - d^2 tau1 ]
struct AsymptoticCoefficients {
  double k1_l4 = 0.0;
  double k1_l3 = 0.0;
  double k2_l4 = 0.0;
  double k2_l3 = 0.0;
};

AsymptoticCoefficients asymptotic_coefficients(const MaterialParams& p);

} // namespace dporo
