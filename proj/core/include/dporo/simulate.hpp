#pragma once

#include <array>
#include <vector>

#include "dporo/material.hpp"

namespace dporo {

// Truncated spectral trajectory state. modes[i] holds mode n = i+1 as
// (a, a', b, b', c, c'); mean holds the constant component
// (phi_mean, phi_mean', psi_mean, psi_mean'), nonzero only under MixedA3.
struct SpectralState {
  double t = 0.0;
  BoundaryKind bc = BoundaryKind::MixedA3;
  std::vector<std::array<double, 6>> modes;
  std::array<double, 4> mean{};

  int num_modes() const { return static_cast<int>(modes.size()); }

  bool operator==(const SpectralState&) const = default;
};

// Initial data as explicit mode coefficients, one amplitude per (field, n).
struct ModeData {
  struct Amp {
    int n = 0;
    double value = 0.0;
    bool operator==(const Amp&) const = default;
  };
  std::vector<Amp> u0, u1, phi0, phi1, psi0, psi1;
  double phi0_mean = 0.0;
  double phi1_mean = 0.0;
  double psi0_mean = 0.0;
  double psi1_mean = 0.0;

  bool operator==(const ModeData&) const = default;
};

// Initial data sampled on a uniform grid over [0, length], endpoints
// included. Empty fields are treated as zero; non-empty fields need at least
// 4N+1 points for the trapezoid projection onto N modes to hold discrete
// orthogonality.
struct GridData {
  std::vector<double> u0, u1, phi0, phi1, psi0, psi1;
};

SpectralState project_initial(const ModeData& data, const MaterialParams& p,
                              BoundaryKind bc, int N);

// Trapezoid projection onto the first N basis functions plus the mean
// component under MixedA3. Under MixedA2 the mean of u is a conserved
// quantity outside the energy space, so nonzero-mean u data is rejected
// with MeanViolationError. Grids shorter than 4N+1 samples throw
// GridTooCoarseError.
SpectralState project_initial(const GridData& data, const MaterialParams& p,
                              BoundaryKind bc, int N);

struct EnergyBreakdown {
  double total = 0.0;
  double kinetic = 0.0;           // (1/2) int rho u_t^2 + kappa1 phi_t^2 + kappa2 psi_t^2
  double elastic = 0.0;           // (1/2) int mu u_x^2
  double porous_grad = 0.0;       // (1/2) int alpha phi_x^2 + gamma psi_x^2 + 2 beta phi_x psi_x
  double porous_restoring = 0.0;  // (1/2) int alpha1 phi^2 + alpha2 psi^2 + 2 alpha3 phi psi
  double cross = 0.0;             // int b u_x phi + d u_x psi
};

// Parseval evaluation of the energy functional; the basis cross products are
// sign-aware in the boundary kind. Nonnegative whenever validate_positivity
// holds.
EnergyBreakdown energy(const MaterialParams& p, const SpectralState& s);

// Instantaneous dissipation rate
//   D = -tau1 ||phi_t||^2 - (tau2 + tau3) <phi_t, psi_t> - tau4 ||psi_t||^2,
// the exact derivative of the energy along solutions.
double dissipation_rate(const MaterialParams& p, const SpectralState& s);

enum class Integrator { Exact, RK4 };

// Advances the state over steps of dt until t_end, emitting every step
// (including the initial state). Exact uses cached per-mode matrix
// exponentials and is exact up to rounding for any dt; RK4 is the classical
// fourth-order stepper on the same assemblies.
std::vector<SpectralState> evolve(const MaterialParams& p, const SpectralState& s0,
                                  double t_end, double dt, Integrator integrator);

struct EnergySample {
  double t = 0.0;
  double E = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double D = 0.0;
  double balance_residual = 0.0;  // E(t) - E(0) - int_0^t D
};

struct EnergyTrace {
  double dt = 0.0;
  std::vector<EnergySample> samples;
};

// Exact-propagator evolution that streams energy samples instead of storing
// states; the balance column integrates D with composite Simpson rules.
EnergyTrace energy_trace(const MaterialParams& p, const SpectralState& s0,
                         double t_end, double dt);

// Same energy bookkeeping over an already-computed uniform-step trajectory.
EnergyTrace trace_from_states(const MaterialParams& p,
                              const std::vector<SpectralState>& states, double dt);

struct DissipationReport {
  double max_pair_residual = 0.0;   // worst E-jump vs Simpson over one step pair
  double cumulative_residual = 0.0; // worst running balance over the trace
};

// Residuals are relative to max(|E(0)|, 1).
DissipationReport dissipation_check(const EnergyTrace& trace);

struct DecayFit {
  double t0 = 0.0;
  double t1 = 0.0;
  double xi = 0.0;         // E(t) ~ amplitude * exp(-xi t)
  double amplitude = 0.0;
  double r2 = 0.0;
};

// Least-squares line through (t, log E) over the trailing window_fraction of
// the trace. Throws NonPositiveEnergyError if any sample in the window has
// E <= 0.
DecayFit fit_decay(const EnergyTrace& trace, double window_fraction = 0.6);

} // namespace dporo
