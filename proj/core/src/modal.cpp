#include "dporo/modal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dporo/errors.hpp"

namespace dporo {

double ModeMatrix::trace() const {
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += at(i, i);
  return s;
}

linalg::CMat ModeMatrix::complex() const {
  linalg::CMat m(6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = at(i, j);
  return m;
}

linalg::CMat MeanModeMatrix::complex() const {
  linalg::CMat c(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) c(i, j) = at(i, j);
  return c;
}

ModeMatrix assemble_mode_matrix(const MaterialParams& p, BoundaryKind bc, int n) {
  if (n < 1) throw Error("mode index must be >= 1");
  ModeMatrix m;
  m.n = n;
  m.k = wavenumber(p, n);
  m.bc = bc;
  const double k = m.k;
  // Under MixedA2 the u basis is cosine while phi/psi are sine, which flips
  // the sign of each first-derivative coupling; the two assemblies are
  // similar via a -> -a and share their spectrum.
  const double cs = bc == BoundaryKind::MixedA3 ? 1.0 : -1.0;

  m.at(0, 1) = 1.0;
  m.at(1, 0) = -p.mu * k * k / p.rho;
  m.at(1, 2) = -cs * p.b * k / p.rho;
  m.at(1, 4) = -cs * p.d * k / p.rho;

  m.at(2, 3) = 1.0;
  m.at(3, 0) = -cs * p.b * k / p.kappa1;
  m.at(3, 2) = -(p.alpha * k * k + p.alpha1) / p.kappa1;
  m.at(3, 3) = -p.tau1 / p.kappa1;
  m.at(3, 4) = -(p.beta * k * k + p.alpha3) / p.kappa1;
  m.at(3, 5) = -p.tau2 / p.kappa1;

  m.at(4, 5) = 1.0;
  m.at(5, 0) = -cs * p.d * k / p.kappa2;
  m.at(5, 2) = -(p.beta * k * k + p.alpha3) / p.kappa2;
  m.at(5, 3) = -p.tau3 / p.kappa2;
  m.at(5, 4) = -(p.gamma * k * k + p.alpha2) / p.kappa2;
  m.at(5, 5) = -p.tau4 / p.kappa2;
  return m;
}

MeanModeMatrix assemble_mean_matrix(const MaterialParams& p, BoundaryKind bc) {
  if (bc != BoundaryKind::MixedA3)
    throw BcMismatchError("mean-mode assembly exists only under A3 boundary conditions");
  MeanModeMatrix m;
  m.at(0, 1) = 1.0;
  m.at(1, 0) = -p.alpha1 / p.kappa1;
  m.at(1, 1) = -p.tau1 / p.kappa1;
  m.at(1, 2) = -p.alpha3 / p.kappa1;
  m.at(1, 3) = -p.tau2 / p.kappa1;
  m.at(2, 3) = 1.0;
  m.at(3, 0) = -p.alpha3 / p.kappa2;
  m.at(3, 1) = -p.tau3 / p.kappa2;
  m.at(3, 2) = -p.alpha2 / p.kappa2;
  m.at(3, 3) = -p.tau4 / p.kappa2;
  return m;
}

std::vector<std::complex<double>> mode_spectrum(const MaterialParams& p,
                                                BoundaryKind bc, int n) {
  return linalg::eigenvalues(assemble_mode_matrix(p, bc, n).complex());
}

const char* to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::UniformlyNegative: return "UniformlyNegative";
    case ScanVerdict::ApproachingAxis: return "ApproachingAxis";
    case ScanVerdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

SpectrumScan abscissa_scan(const MaterialParams& p, BoundaryKind bc, int n_max) {
  if (n_max < 1) throw Error("abscissa_scan requires n_max >= 1");
  SpectrumScan scan;
  scan.params = p;
  scan.bc = bc;
  scan.records.reserve(static_cast<size_t>(n_max));

  for (int n = 1; n <= n_max; ++n) {
    const auto lam = mode_spectrum(p, bc, n);
    ScanRecord rec;
    rec.n = n;
    rec.k = wavenumber(p, n);
    rec.abscissa = -std::numeric_limits<double>::infinity();
    for (const auto& l : lam) {
      // Deterministic tie-break: larger Re wins, then smaller |Im|.
      if (l.real() > rec.abscissa ||
          (l.real() == rec.abscissa && std::abs(l.imag()) < rec.abscissa_freq)) {
        rec.abscissa = l.real();
        rec.abscissa_freq = std::abs(l.imag());
      }
    }
    scan.records.push_back(rec);
  }

  scan.sup_abscissa = -std::numeric_limits<double>::infinity();
  for (const auto& r : scan.records) {
    if (r.abscissa > scan.sup_abscissa) {
      scan.sup_abscissa = r.abscissa;
      scan.sup_n = r.n;
    }
  }

  // Tail model abscissa(n) = limit + C/n^2 fitted over the top third; the
  // 1/n^2 regressor captures the leading finite-n correction.
  const size_t total = scan.records.size();
  const size_t start = total - std::max<size_t>(total / 3, std::min<size_t>(total, 2));
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (size_t i = start; i < total; ++i) {
    const double x = 1.0 / (static_cast<double>(scan.records[i].n) *
                            static_cast<double>(scan.records[i].n));
    const double y = scan.records[i].abscissa;
    s11 += 1.0;
    s12 += x;
    s22 += x * x;
    r1 += y;
    r2 += x * y;
  }
  const double denom = s11 * s22 - s12 * s12;
  scan.tail_limit = denom != 0.0 ? (r1 * s22 - r2 * s12) / denom : r1 / s11;

  if (scan.sup_abscissa < -1e-6 && scan.tail_limit < -1e-6)
    scan.verdict = ScanVerdict::UniformlyNegative;
  else if (std::abs(scan.tail_limit) <= 1e-6)
    scan.verdict = ScanVerdict::ApproachingAxis;
  else
    scan.verdict = ScanVerdict::Indeterminate;
  return scan;
}

} // namespace dporo
