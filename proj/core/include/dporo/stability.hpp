#pragma once

#include <optional>
#include <utility>

#include "dporo/material.hpp"

namespace dporo {

// Decay regime of the semigroup, decided by the two wave-speed matching
// numbers chi0 and chi1 below.
//   Exponential : chi0 == 0 and chi1 != 0, uniform exponential decay.
//   NonExpCase1 : chi0 != 0 and chi1 != 0, resolvent grows like |lambda|.
//   NonExpCase2 : chi0 == 0 and chi1 == 0, resolvent grows like |lambda|.
//   NonExpCase3 : chi0 != 0 and chi1 == 0, resolvent grows like |lambda|^2.
enum class StabilityRegime { Exponential, NonExpCase1, NonExpCase2, NonExpCase3 };

const char* to_string(StabilityRegime r);

struct StabilityClass {
  StabilityRegime regime;
  double chi0 = 0.0;
  double chi1 = 0.0;
  double zero_tolerance = 0.0;
};

// chi0 = (mu*kappa1/rho - alpha)(mu*kappa2/rho - gamma) - beta^2.
// Vanishes exactly when the elastic wave speed matches the porous block in
// the coupled sense; invariant under (rho, mu) -> (s*rho, s*mu).
double chi0(const MaterialParams& p);

// chi1 = d^2 (mu*kappa1/rho - alpha) + b^2 (mu*kappa2/rho - gamma) + 2 b d beta.
double chi1(const MaterialParams& p);

// Zero tests are relative: |chi| <= tol * scale with the scale assembled from
// the magnitudes of the products entering each number (floored at 1).
StabilityClass classify(const MaterialParams& p, double tol = 1e-9);

// Searches for a speed-matching witness (sigma, omega), nonzero weights with
//   mu/rho = (sigma*alpha + omega*beta) / (sigma*kappa1)
//          = (sigma*beta + omega*gamma) / (omega*kappa2).
// For beta != 0 the candidate (b, d) is tried; for beta == 0 the two
// decoupled alternatives mu/rho = alpha/kappa1 (with b != 0, witness (1,0))
// and mu/rho = gamma/kappa2 (with d != 0, witness (0,1)). Equality is tested
// to 1e-9 relative. Returns the witness, or nothing.
std::optional<std::pair<double, double>> check_Hprime(const MaterialParams& p);

// Resolvent growth exponent predicted for each regime along the elastic
// resonance sequence: 0, 1, 1, 2.
double theoretical_probe_exponent(StabilityRegime r);

} // namespace dporo
