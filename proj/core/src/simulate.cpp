#include "dporo/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "dporo/errors.hpp"
#include "dporo/linalg.hpp"
#include "dporo/modal.hpp"

namespace dporo {

namespace {

using Mat6 = std::array<double, 36>;
using Mat4 = std::array<double, 16>;
using Vec6 = std::array<double, 6>;
using Vec4 = std::array<double, 4>;

Vec6 apply6(const Mat6& m, const Vec6& x) {
  Vec6 y{};
  for (int i = 0; i < 6; ++i) {
    double s = 0.0;
    for (int j = 0; j < 6; ++j) s += m[static_cast<size_t>(i * 6 + j)] * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  return y;
}

Vec4 apply4(const Mat4& m, const Vec4& x) {
  Vec4 y{};
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += m[static_cast<size_t>(i * 4 + j)] * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = s;
  }
  return y;
}

// Per-run propagator cache: one exponential per (mode, dt), plus the mean
// block under A3. Exponentials of real assemblies are real; the vanishing
// imaginary rounding residue is dropped.
struct Stepper {
  Integrator integrator = Integrator::Exact;
  double dt = 0.0;
  bool has_mean = false;
  std::vector<Mat6> mode_gen;   // generators (RK4 path)
  std::vector<Mat6> mode_prop;  // exponentials (Exact path)
  Mat4 mean_gen{};
  Mat4 mean_prop{};
};

Stepper make_stepper(const MaterialParams& p, const SpectralState& s0, double dt,
                     Integrator integrator) {
  Stepper st;
  st.integrator = integrator;
  st.dt = dt;
  st.has_mean = s0.bc == BoundaryKind::MixedA3;
  const int N = s0.num_modes();
  st.mode_gen.resize(static_cast<size_t>(N));
  if (integrator == Integrator::Exact) st.mode_prop.resize(static_cast<size_t>(N));

  for (int n = 1; n <= N; ++n) {
    const ModeMatrix m = assemble_mode_matrix(p, s0.bc, n);
    st.mode_gen[static_cast<size_t>(n - 1)] = m.a;
    if (integrator == Integrator::Exact) {
      const linalg::CMat e = linalg::expm(m.complex(), dt);
      Mat6& prop = st.mode_prop[static_cast<size_t>(n - 1)];
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) prop[static_cast<size_t>(i * 6 + j)] = e(i, j).real();
    }
  }

  if (st.has_mean) {
    const MeanModeMatrix mm = assemble_mean_matrix(p, s0.bc);
    st.mean_gen = mm.m;
    const linalg::CMat e = linalg::expm(mm.complex(), dt);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) st.mean_prop[static_cast<size_t>(i * 4 + j)] = e(i, j).real();
  }
  return st;
}

template <typename Vec, typename Mat>
Vec rk4_step(const Mat& gen, const Vec& y, double dt, Vec (*apply)(const Mat&, const Vec&)) {
  const Vec k1 = apply(gen, y);
  Vec tmp = y;
  for (size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
  const Vec k2 = apply(gen, tmp);
  for (size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
  const Vec k3 = apply(gen, tmp);
  for (size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + dt * k3[i];
  const Vec k4 = apply(gen, tmp);
  Vec out = y;
  for (size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

void advance(const Stepper& st, SpectralState& s) {
  const int N = s.num_modes();
  if (st.integrator == Integrator::Exact) {
    for (int i = 0; i < N; ++i)
      s.modes[static_cast<size_t>(i)] = apply6(st.mode_prop[static_cast<size_t>(i)], s.modes[static_cast<size_t>(i)]);
    if (st.has_mean) s.mean = apply4(st.mean_prop, s.mean);
  } else {
    for (int i = 0; i < N; ++i)
      s.modes[static_cast<size_t>(i)] = rk4_step(st.mode_gen[static_cast<size_t>(i)], s.modes[static_cast<size_t>(i)], st.dt, apply6);
    if (st.has_mean) s.mean = rk4_step(st.mean_gen, s.mean, st.dt, apply4);
  }
}

int step_count(double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw Error("evolve requires dt > 0 and t_end >= 0");
  return static_cast<int>(std::ceil(t_end / dt - 1e-9));
}

void place(std::vector<std::array<double, 6>>& modes, const std::vector<ModeData::Amp>& amps,
           int slot, int N) {
  for (const auto& a : amps) {
    if (a.n < 1 || a.n > N)
      throw Error("mode coefficient index " + std::to_string(a.n) +
                  " outside 1.." + std::to_string(N));
    modes[static_cast<size_t>(a.n - 1)][static_cast<size_t>(slot)] += a.value;
  }
}

// Trapezoid quadrature of samples * basis over [0, L]; exact for trig
// polynomials resolved by the grid.
double project_basis(const std::vector<double>& samples, double L, double k, bool sine) {
  const size_t P = samples.size();
  const double h = L / static_cast<double>(P - 1);
  double acc = 0.0;
  for (size_t j = 0; j < P; ++j) {
    const double x = h * static_cast<double>(j);
    const double w = (j == 0 || j == P - 1) ? 0.5 : 1.0;
    const double basis = sine ? std::sin(k * x) : std::cos(k * x);
    acc += w * samples[j] * basis;
  }
  return acc * h * 2.0 / L;
}

double grid_mean(const std::vector<double>& samples, double L) {
  const size_t P = samples.size();
  const double h = L / static_cast<double>(P - 1);
  double acc = 0.0;
  for (size_t j = 0; j < P; ++j)
    acc += ((j == 0 || j == P - 1) ? 0.5 : 1.0) * samples[j];
  return acc * h / L;
}

} // namespace

SpectralState project_initial(const ModeData& data, const MaterialParams& p,
                              BoundaryKind bc, int N) {
  (void)p;
  if (N < 1) throw Error("mode count must be >= 1");
  SpectralState s;
  s.bc = bc;
  s.modes.assign(static_cast<size_t>(N), Vec6{});
  place(s.modes, data.u0, 0, N);
  place(s.modes, data.u1, 1, N);
  place(s.modes, data.phi0, 2, N);
  place(s.modes, data.phi1, 3, N);
  place(s.modes, data.psi0, 4, N);
  place(s.modes, data.psi1, 5, N);

  const bool has_mean = data.phi0_mean != 0.0 || data.phi1_mean != 0.0 ||
                        data.psi0_mean != 0.0 || data.psi1_mean != 0.0;
  if (has_mean) {
    if (bc != BoundaryKind::MixedA3)
      throw BcMismatchError("constant phi/psi components exist only under A3 boundary conditions");
    s.mean = {data.phi0_mean, data.phi1_mean, data.psi0_mean, data.psi1_mean};
  }
  return s;
}

SpectralState project_initial(const GridData& data, const MaterialParams& p,
                              BoundaryKind bc, int N) {
  if (N < 1) throw Error("mode count must be >= 1");
  const size_t min_points = static_cast<size_t>(4 * N + 1);
  const std::vector<double>* fields[6] = {&data.u0, &data.u1, &data.phi0,
                                          &data.phi1, &data.psi0, &data.psi1};
  for (const auto* f : fields)
    if (!f->empty() && f->size() < min_points)
      throw GridTooCoarseError("grid has " + std::to_string(f->size()) +
                               " points, need at least " + std::to_string(min_points) +
                               " for " + std::to_string(N) + " modes");

  if (bc == BoundaryKind::MixedA2) {
    for (const auto* f : {&data.u0, &data.u1}) {
      if (f->empty()) continue;
      double scale = 1.0;
      for (double v : *f) scale = std::max(scale, std::abs(v));
      if (std::abs(grid_mean(*f, p.length)) > 1e-9 * scale)
        throw MeanViolationError(
            "u data has a nonzero mean; the mean of u_t is conserved under A2 "
            "boundary conditions and must vanish initially");
    }
  }

  SpectralState s;
  s.bc = bc;
  s.modes.assign(static_cast<size_t>(N), Vec6{});
  const bool u_sine = bc == BoundaryKind::MixedA3;

  for (int n = 1; n <= N; ++n) {
    const double k = wavenumber(p, n);
    Vec6& mode = s.modes[static_cast<size_t>(n - 1)];
    if (!data.u0.empty()) mode[0] = project_basis(data.u0, p.length, k, u_sine);
    if (!data.u1.empty()) mode[1] = project_basis(data.u1, p.length, k, u_sine);
    if (!data.phi0.empty()) mode[2] = project_basis(data.phi0, p.length, k, !u_sine);
    if (!data.phi1.empty()) mode[3] = project_basis(data.phi1, p.length, k, !u_sine);
    if (!data.psi0.empty()) mode[4] = project_basis(data.psi0, p.length, k, !u_sine);
    if (!data.psi1.empty()) mode[5] = project_basis(data.psi1, p.length, k, !u_sine);
  }

  if (bc == BoundaryKind::MixedA3) {
    if (!data.phi0.empty()) s.mean[0] = grid_mean(data.phi0, p.length);
    if (!data.phi1.empty()) s.mean[1] = grid_mean(data.phi1, p.length);
    if (!data.psi0.empty()) s.mean[2] = grid_mean(data.psi0, p.length);
    if (!data.psi1.empty()) s.mean[3] = grid_mean(data.psi1, p.length);
  }
  return s;
}

EnergyBreakdown energy(const MaterialParams& p, const SpectralState& s) {
  EnergyBreakdown e;
  const double L = p.length;
  const double quarter = 0.25 * L;
  const double cs = s.bc == BoundaryKind::MixedA3 ? 1.0 : -1.0;

  for (int i = 0; i < s.num_modes(); ++i) {
    const Vec6& m = s.modes[static_cast<size_t>(i)];
    const double k = wavenumber(p, i + 1);
    const double a = m[0], ap = m[1], b = m[2], bp = m[3], c = m[4], cp = m[5];
    e.kinetic += quarter * (p.rho * ap * ap + p.kappa1 * bp * bp + p.kappa2 * cp * cp);
    e.elastic += quarter * p.mu * k * k * a * a;
    e.porous_grad += quarter * k * k * (p.alpha * b * b + p.gamma * c * c + 2.0 * p.beta * b * c);
    e.porous_restoring += quarter * (p.alpha1 * b * b + p.alpha2 * c * c + 2.0 * p.alpha3 * b * c);
    e.cross += quarter * 2.0 * cs * k * (p.b * a * b + p.d * a * c);
  }

  if (s.bc == BoundaryKind::MixedA3) {
    const Vec4& x = s.mean;
    e.kinetic += 0.5 * L * (p.kappa1 * x[1] * x[1] + p.kappa2 * x[3] * x[3]);
    e.porous_restoring += 0.5 * L * (p.alpha1 * x[0] * x[0] + p.alpha2 * x[2] * x[2] +
                                     2.0 * p.alpha3 * x[0] * x[2]);
  }

  e.total = e.kinetic + e.elastic + e.porous_grad + e.porous_restoring + e.cross;
  return e;
}

double dissipation_rate(const MaterialParams& p, const SpectralState& s) {
  const double ts = p.tau2 + p.tau3;
  double acc = 0.0;
  for (const auto& m : s.modes) {
    const double bp = m[3], cp = m[5];
    acc += p.tau1 * bp * bp + ts * bp * cp + p.tau4 * cp * cp;
  }
  acc *= 0.5 * p.length;
  if (s.bc == BoundaryKind::MixedA3) {
    const double bp = s.mean[1], cp = s.mean[3];
    acc += p.length * (p.tau1 * bp * bp + ts * bp * cp + p.tau4 * cp * cp);
  }
  return -acc + 0.0;  // + 0.0 folds -0 into +0
}

std::vector<SpectralState> evolve(const MaterialParams& p, const SpectralState& s0,
                                  double t_end, double dt, Integrator integrator) {
  if (s0.num_modes() < 1) throw Error("state has no modes");
  const int steps = step_count(t_end, dt);
  const Stepper st = make_stepper(p, s0, dt, integrator);

  std::vector<SpectralState> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  out.push_back(s0);
  SpectralState cur = s0;
  for (int i = 0; i < steps; ++i) {
    advance(st, cur);
    cur.t = s0.t + (i + 1) * dt;  // not accumulated, so t carries no drift
    out.push_back(cur);
  }
  return out;
}

namespace {

EnergySample sample_state(const MaterialParams& p, const SpectralState& s) {
  const EnergyBreakdown e = energy(p, s);
  EnergySample sample;
  sample.t = s.t;
  sample.E = e.total;
  sample.kinetic = e.kinetic;
  sample.potential = e.total - e.kinetic;
  sample.D = dissipation_rate(p, s);
  return sample;
}

// Running integral of D: composite Simpson over step pairs, with the
// quadratic three-point rule for the odd half-pair.
void fill_balance(EnergyTrace& trace) {
  const double dt = trace.dt;
  const size_t count = trace.samples.size();
  std::vector<double> cum(count, 0.0);
  auto dval = [&](size_t j) { return trace.samples[j].D; };
  for (size_t j = 1; j < count; ++j) {
    if (j % 2 == 0) {
      cum[j] = cum[j - 2] + dt / 3.0 * (dval(j - 2) + 4.0 * dval(j - 1) + dval(j));
    } else if (j + 1 < count) {
      cum[j] = cum[j - 1] + dt / 12.0 * (5.0 * dval(j - 1) + 8.0 * dval(j) - dval(j + 1));
    } else if (j >= 2) {
      cum[j] = cum[j - 1] + dt / 12.0 * (-dval(j - 2) + 8.0 * dval(j - 1) + 5.0 * dval(j));
    } else {
      cum[j] = cum[j - 1] + dt / 2.0 * (dval(j - 1) + dval(j));
    }
  }
  for (size_t j = 0; j < count; ++j)
    trace.samples[j].balance_residual = trace.samples[j].E - trace.samples[0].E - cum[j];
}

} // namespace

EnergyTrace energy_trace(const MaterialParams& p, const SpectralState& s0,
                         double t_end, double dt) {
  if (s0.num_modes() < 1) throw Error("state has no modes");
  const int steps = step_count(t_end, dt);
  const Stepper st = make_stepper(p, s0, dt, Integrator::Exact);

  EnergyTrace trace;
  trace.dt = dt;
  trace.samples.reserve(static_cast<size_t>(steps) + 1);
  SpectralState cur = s0;
  for (int i = 0; i <= steps; ++i) {
    if (i > 0) {
      advance(st, cur);
      cur.t = s0.t + i * dt;
    }
    trace.samples.push_back(sample_state(p, cur));
  }
  fill_balance(trace);
  return trace;
}

EnergyTrace trace_from_states(const MaterialParams& p,
                              const std::vector<SpectralState>& states, double dt) {
  EnergyTrace trace;
  trace.dt = dt;
  trace.samples.reserve(states.size());
  for (const auto& s : states) trace.samples.push_back(sample_state(p, s));
  fill_balance(trace);
  return trace;
}

DissipationReport dissipation_check(const EnergyTrace& trace) {
  DissipationReport rep;
  const auto& s = trace.samples;
  if (s.size() < 3) return rep;
  const double scale = std::max(std::abs(s[0].E), 1.0);
  for (size_t j = 2; j < s.size(); j += 2) {
    const double integral = trace.dt / 3.0 * (s[j - 2].D + 4.0 * s[j - 1].D + s[j].D);
    const double res = std::abs(s[j].E - s[j - 2].E - integral);
    rep.max_pair_residual = std::max(rep.max_pair_residual, res / scale);
  }
  for (const auto& sample : s)
    rep.cumulative_residual = std::max(rep.cumulative_residual,
                                       std::abs(sample.balance_residual) / scale);
  return rep;
}

DecayFit fit_decay(const EnergyTrace& trace, double window_fraction) {
  if (!(window_fraction > 0.0) || window_fraction > 1.0)
    throw Error("window fraction must lie in (0, 1]");
  const auto& s = trace.samples;
  if (s.size() < 2) throw Error("trace too short to fit");
  const double t_end = s.back().t;
  const double t0 = s.front().t + (1.0 - window_fraction) * (t_end - s.front().t);

  double sx = 0, sy = 0, sxx = 0, sxy = 0, count = 0;
  for (const auto& sample : s) {
    if (sample.t < t0) continue;
    if (!(sample.E > 0.0))
      throw NonPositiveEnergyError("energy is not positive inside the fit window");
    const double y = std::log(sample.E);
    sx += sample.t; sy += y; sxx += sample.t * sample.t; sxy += sample.t * y;
    count += 1.0;
  }
  if (count < 2.0) throw Error("fit window contains fewer than two samples");

  DecayFit fit;
  fit.t0 = t0;
  fit.t1 = t_end;
  const double denom = count * sxx - sx * sx;
  const double slope = (count * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / count;
  fit.xi = -slope;
  fit.amplitude = std::exp(intercept);

  const double ymean = sy / count;
  double ss_res = 0, ss_tot = 0;
  for (const auto& sample : s) {
    if (sample.t < t0) continue;
    const double y = std::log(sample.E);
    ss_res += (y - (slope * sample.t + intercept)) * (y - (slope * sample.t + intercept));
    ss_tot += (y - ymean) * (y - ymean);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

} // namespace dporo
