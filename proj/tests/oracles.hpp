#pragma once

// Reference implementations the tests compare the library against. Nothing
// here calls into the library's numerics: integration is plain RK4 on flat
// vectors, quadrature is composite Simpson on a dense grid, and fields are
// reconstructed directly from the trigonometric expansion.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dporo/material.hpp"
#include "dporo/simulate.hpp"

namespace oracle {

using Complex = std::complex<double>;

// The four bundled parameter sets, duplicated here by value so the tests do
// not depend on the catalog files they are meant to check.
inline dporo::MaterialParams p_exp() {
  dporo::MaterialParams p;
  p.rho = 1; p.mu = 1; p.b = 0.1; p.d = 0;
  p.kappa1 = 1; p.kappa2 = 1; p.alpha = 1; p.beta = 0; p.gamma = 2;
  p.alpha1 = 1; p.alpha2 = 1; p.alpha3 = 0;
  p.tau1 = 1; p.tau2 = 0; p.tau3 = 0; p.tau4 = 1;
  return p;
}

inline dporo::MaterialParams p_case1() {
  dporo::MaterialParams p = p_exp();
  p.d = 0.1;
  p.alpha = 2;
  return p;
}

inline dporo::MaterialParams p_case2() {
  dporo::MaterialParams p;
  p.rho = 1; p.mu = 1; p.b = 1; p.d = 1;
  p.kappa1 = 1; p.kappa2 = 1; p.alpha = 1.5; p.beta = 0.5; p.gamma = 1.5;
  p.alpha1 = 3; p.alpha2 = 3; p.alpha3 = 0;
  p.tau1 = 1; p.tau2 = 0; p.tau3 = 0; p.tau4 = 1;
  return p;
}

inline dporo::MaterialParams p_case3() {
  dporo::MaterialParams p = p_case1();
  p.kappa2 = 3;
  return p;
}

// --- dense linear algebra on flat row-major complex matrices ---

inline std::vector<Complex> matmul(const std::vector<Complex>& a,
                                   const std::vector<Complex>& b, int dim) {
  std::vector<Complex> c(static_cast<size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) {
      const Complex aik = a[static_cast<size_t>(i * dim + k)];
      for (int j = 0; j < dim; ++j)
        c[static_cast<size_t>(i * dim + j)] += aik * b[static_cast<size_t>(k * dim + j)];
    }
  return c;
}

// X' = M X, X(0) = I, integrated to X(t) ~ exp(tM) with classical RK4.
inline std::vector<Complex> rk4_expm(const std::vector<Complex>& m, int dim,
                                     double t, int steps) {
  const size_t sz = static_cast<size_t>(dim) * dim;
  std::vector<Complex> x(sz, 0.0);
  for (int i = 0; i < dim; ++i) x[static_cast<size_t>(i * dim + i)] = 1.0;
  const double h = t / steps;
  std::vector<Complex> tmp(sz);
  for (int s = 0; s < steps; ++s) {
    const auto k1 = matmul(m, x, dim);
    for (size_t i = 0; i < sz; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
    const auto k2 = matmul(m, tmp, dim);
    for (size_t i = 0; i < sz; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
    const auto k3 = matmul(m, tmp, dim);
    for (size_t i = 0; i < sz; ++i) tmp[i] = x[i] + h * k3[i];
    const auto k4 = matmul(m, tmp, dim);
    for (size_t i = 0; i < sz; ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return x;
}

// y' = A y for real flat matrices.
inline std::vector<double> rk4_vec(const std::vector<double>& a, int dim,
                                   std::vector<double> y, double t, int steps) {
  auto apply = [&](const std::vector<double>& v) {
    std::vector<double> r(static_cast<size_t>(dim), 0.0);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        r[static_cast<size_t>(i)] += a[static_cast<size_t>(i * dim + j)] * v[static_cast<size_t>(j)];
    return r;
  };
  const double h = t / steps;
  std::vector<double> tmp(static_cast<size_t>(dim));
  for (int s = 0; s < steps; ++s) {
    const auto k1 = apply(y);
    for (int i = 0; i < dim; ++i) tmp[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] + 0.5 * h * k1[static_cast<size_t>(i)];
    const auto k2 = apply(tmp);
    for (int i = 0; i < dim; ++i) tmp[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] + 0.5 * h * k2[static_cast<size_t>(i)];
    const auto k3 = apply(tmp);
    for (int i = 0; i < dim; ++i) tmp[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] + h * k3[static_cast<size_t>(i)];
    const auto k4 = apply(tmp);
    for (int i = 0; i < dim; ++i)
      y[static_cast<size_t>(i)] += h / 6.0 * (k1[static_cast<size_t>(i)] + 2.0 * k2[static_cast<size_t>(i)] + 2.0 * k3[static_cast<size_t>(i)] + k4[static_cast<size_t>(i)]);
  }
  return y;
}

// --- field reconstruction and quadrature energy ---

struct Fields {
  double u = 0, ut = 0, ux = 0;
  double phi = 0, phit = 0, phix = 0;
  double psi = 0, psit = 0, psix = 0;
};

inline Fields eval_state(const dporo::SpectralState& s,
                         const dporo::MaterialParams& p, double x) {
  Fields f;
  const bool a3 = s.bc == dporo::BoundaryKind::MixedA3;
  if (a3) {
    f.phi = s.mean[0];
    f.phit = s.mean[1];
    f.psi = s.mean[2];
    f.psit = s.mean[3];
  }
  for (int n = 1; n <= s.num_modes(); ++n) {
    const auto& m = s.modes[static_cast<size_t>(n - 1)];
    const double k = n * std::numbers::pi / p.length;
    const double sn = std::sin(k * x), cs = std::cos(k * x);
    const double bu = a3 ? sn : cs;        // u basis
    const double bux = a3 ? k * cs : -k * sn;
    const double bp = a3 ? cs : sn;        // phi/psi basis
    const double bpx = a3 ? -k * sn : k * cs;
    f.u += m[0] * bu;
    f.ut += m[1] * bu;
    f.ux += m[0] * bux;
    f.phi += m[2] * bp;
    f.phit += m[3] * bp;
    f.phix += m[2] * bpx;
    f.psi += m[4] * bp;
    f.psit += m[5] * bp;
    f.psix += m[4] * bpx;
  }
  return f;
}

// Composite Simpson of the energy density over [0, length]. Independent of
// the library's Parseval bookkeeping, including the basis-dependent sign of
// the u_x coupling terms.
inline double quadrature_energy(const dporo::SpectralState& s,
                                const dporo::MaterialParams& p,
                                int intervals = 4096) {
  auto density = [&](double x) {
    const Fields f = eval_state(s, p, x);
    return 0.5 * (p.rho * f.ut * f.ut + p.kappa1 * f.phit * f.phit +
                  p.kappa2 * f.psit * f.psit + p.mu * f.ux * f.ux +
                  p.alpha * f.phix * f.phix + p.gamma * f.psix * f.psix +
                  2.0 * p.beta * f.phix * f.psix + p.alpha1 * f.phi * f.phi +
                  p.alpha2 * f.psi * f.psi + 2.0 * p.alpha3 * f.phi * f.psi) +
           p.b * f.ux * f.phi + p.d * f.ux * f.psi;
  };
  const int n = intervals % 2 == 0 ? intervals : intervals + 1;
  const double h = p.length / n;
  double acc = density(0.0) + density(p.length);
  for (int i = 1; i < n; ++i) acc += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Same rule for the instantaneous dissipation rate
// -tau1 |phi_t|^2 - (tau2 + tau3) <phi_t, psi_t> - tau4 |psi_t|^2.
inline double quadrature_dissipation(const dporo::SpectralState& s,
                                     const dporo::MaterialParams& p,
                                     int intervals = 4096) {
  auto density = [&](double x) {
    const Fields f = eval_state(s, p, x);
    return -(p.tau1 * f.phit * f.phit + (p.tau2 + p.tau3) * f.phit * f.psit +
             p.tau4 * f.psit * f.psit);
  };
  const int n = intervals % 2 == 0 ? intervals : intervals + 1;
  const double h = p.length / n;
  double acc = density(0.0) + density(p.length);
  for (int i = 1; i < n; ++i) acc += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Admissible random coefficients: diagonally dominant restoring/gradient
// blocks with small couplings, then rejection on the full validator.
inline dporo::MaterialParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.5, 2.0);
  std::uniform_real_distribution<double> small(-0.3, 0.3);
  for (;;) {
    dporo::MaterialParams p;
    p.rho = pos(rng);
    p.mu = pos(rng);
    p.kappa1 = pos(rng);
    p.kappa2 = pos(rng);
    p.alpha = pos(rng);
    p.gamma = pos(rng);
    p.alpha1 = pos(rng);
    p.alpha2 = pos(rng);
    p.b = small(rng);
    p.d = small(rng);
    p.beta = 0.3 * small(rng);
    p.alpha3 = 0.3 * small(rng);
    p.tau1 = pos(rng);
    p.tau4 = pos(rng);
    p.tau2 = 0.3 * small(rng);
    p.tau3 = 0.3 * small(rng);
    if (p.b == 0.0 && p.d == 0.0) continue;
    if (dporo::validate_all(p, dporo::BoundaryKind::MixedA3).ok()) return p;
  }
}

} // namespace oracle
