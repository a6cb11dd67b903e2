#pragma once

#include <array>
#include <complex>
#include <vector>

#include "dporo/linalg.hpp"
#include "dporo/material.hpp"

namespace dporo {

// First-order assembly of mode n on the state (a, a', b, b', c, c'), where
// a, b, c are the coefficients of u, phi, psi in the mode-n basis functions.
// Row pattern (MixedA3; MixedA2 flips the sign of every k-coupling entry):
//   a'' = (-mu k^2 a - b k b - d k c) / rho
//   b'' = (-(alpha k^2 + alpha1) b - (beta k^2 + alpha3) c - b k a
//          - tau1 b' - tau2 c') / kappa1
//   c'' = (-(beta k^2 + alpha3) b - (gamma k^2 + alpha2) c - d k a
//          - tau3 b' - tau4 c') / kappa2
// Invariant: trace = -tau1/kappa1 - tau4/kappa2 for every n and either bc.
struct ModeMatrix {
  int n = 0;
  double k = 0.0;
  BoundaryKind bc = BoundaryKind::MixedA3;
  std::array<double, 36> a{};

  double& at(int i, int j) { return a[static_cast<size_t>(i * 6 + j)]; }
  double at(int i, int j) const { return a[static_cast<size_t>(i * 6 + j)]; }
  double trace() const;
  linalg::CMat complex() const;
};

// The spatially constant component of (phi, psi) under MixedA3 evolves on its
// own: state X = (phi_mean, phi_mean', psi_mean, psi_mean').
struct MeanModeMatrix {
  std::array<double, 16> m{};

  double& at(int i, int j) { return m[static_cast<size_t>(i * 4 + j)]; }
  double at(int i, int j) const { return m[static_cast<size_t>(i * 4 + j)]; }
  linalg::CMat complex() const;
};

ModeMatrix assemble_mode_matrix(const MaterialParams& p, BoundaryKind bc, int n);

// MixedA3 only; under MixedA2 the constant component of phi/psi is not a
// coordinate of the expansion and the call throws BcMismatchError.
MeanModeMatrix assemble_mean_matrix(const MaterialParams& p, BoundaryKind bc);

// The six eigenvalues of mode n. Closed under conjugation (real assembly);
// with all dampings zero and a positive energy matrix they are purely
// imaginary.
std::vector<std::complex<double>> mode_spectrum(const MaterialParams& p,
                                                BoundaryKind bc, int n);

struct ScanRecord {
  int n = 0;
  double k = 0.0;
  double abscissa = 0.0;       // max Re over the six eigenvalues
  double abscissa_freq = 0.0;  // |Im| of the eigenvalue attaining it
};

enum class ScanVerdict { UniformlyNegative, ApproachingAxis, Indeterminate };

const char* to_string(ScanVerdict v);

struct SpectrumScan {
  MaterialParams params;
  BoundaryKind bc = BoundaryKind::MixedA3;
  std::vector<ScanRecord> records;  // ordered by n = 1..n_max
  double sup_abscissa = 0.0;
  int sup_n = 0;
  double tail_limit = 0.0;  // intercept of the abscissa ~ limit + C/n^2 fit
  ScanVerdict verdict = ScanVerdict::Indeterminate;
};

// Scans modes 1..n_max. The tail limit is a least-squares fit of abscissa(n)
// against {1, 1/n^2} over the top third of the scanned range. Verdict:
// UniformlyNegative when sup < -1e-6 and tail limit < -1e-6, ApproachingAxis
// when |tail limit| <= 1e-6, otherwise Indeterminate.
SpectrumScan abscissa_scan(const MaterialParams& p, BoundaryKind bc, int n_max);

} // namespace dporo
