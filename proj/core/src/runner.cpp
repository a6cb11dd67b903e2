#include "dporo/runner.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dporo/errors.hpp"
#include "dporo/modal.hpp"
#include "dporo/resolvent.hpp"
#include "dporo/simulate.hpp"
#include "dporo/stability.hpp"

namespace dporo {
namespace {

using ojson = nlohmann::ordered_json;

// Shortest round-trip decimal; the CSV twin of the JSON number formatting.
std::string fmt(double v) {
  std::array<char, 40> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_artifact(const RunOptions& opts, const std::string& name,
                    const std::string& content) {
  if (opts.out_dir.empty()) return;
  namespace fs = std::filesystem;
  const fs::path dir(opts.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path file = dir / name;
  std::ofstream f(file, std::ios::binary | std::ios::trunc);
  f << content;
  if (!f) throw Error("cannot write artifact " + file.string());
}

ojson validation_json(const ValidationReport& rep) {
  ojson j;
  j["positivity_ok"] = rep.positivity_ok;
  j["damping_ok"] = rep.damping_ok;
  j["coupling_ok"] = rep.coupling_ok;
  j["fields_ok"] = rep.fields_ok;
  j["ok"] = rep.ok();
  j["minors"] = std::vector<double>(rep.minors.begin(), rep.minors.end());
  ojson diag;
  diag["schur_det"] = rep.schur_det;
  diag["alpha1mu_minus_b2"] = rep.alpha1mu_minus_b2;
  diag["alpha2mu_minus_d2"] = rep.alpha2mu_minus_d2;
  diag["alpha1alpha2_minus_alpha3sq"] = rep.alpha1alpha2_minus_alpha3sq;
  diag["alphagamma_minus_beta2"] = rep.alphagamma_minus_beta2;
  j["diagnostics"] = diag;
  j["messages"] = rep.messages;
  return j;
}

ojson stability_json(const RunConfig& cfg, const RunOptions& opts) {
  const ValidationReport rep = validate_all(cfg.material, cfg.bc);
  const StabilityClass sc = classify(cfg.material, opts.tol);
  const auto witness = check_Hprime(cfg.material);
  ojson j;
  j["validation"] = validation_json(rep);
  j["class"] = to_string(sc.regime);
  j["chi0"] = sc.chi0;
  j["chi1"] = sc.chi1;
  j["zero_tolerance"] = sc.zero_tolerance;
  ojson h;
  h["found"] = witness.has_value();
  if (witness) {
    h["sigma"] = witness->first;
    h["omega"] = witness->second;
  }
  j["hprime"] = h;
  j["theoretical_probe_exponent"] = theoretical_probe_exponent(sc.regime);
  return j;
}

ojson scan_json(const SpectrumScan& scan) {
  ojson j;
  j["bc"] = to_string(scan.bc);
  j["n_max"] = static_cast<int>(scan.records.size());
  j["sup_abscissa"] = scan.sup_abscissa;
  j["sup_n"] = scan.sup_n;
  j["tail_limit"] = scan.tail_limit;
  j["verdict"] = to_string(scan.verdict);
  return j;
}

ojson probe_json(const ProbeResult& pr) {
  ojson j;
  j["points"] = static_cast<int>(pr.points.size());
  j["skipped"] = pr.skipped;
  j["exponent"] = pr.exponent;
  j["residual"] = pr.residual;
  j["exponent_full"] = pr.exponent_full;
  j["residual_full"] = pr.residual_full;
  j["theoretical_exponent"] = pr.theoretical_exponent;
  return j;
}

std::string scan_csv(const SpectrumScan& scan) {
  std::string csv = "n,k,abscissa,abscissa_freq\n";
  for (const ScanRecord& r : scan.records) {
    csv += std::to_string(r.n);
    csv += ',';
    csv += fmt(r.k);
    csv += ',';
    csv += fmt(r.abscissa);
    csv += ',';
    csv += fmt(r.abscissa_freq);
    csv += '\n';
  }
  return csv;
}

std::string probe_csv(const ProbeResult& pr) {
  std::string csv = "n,lambda,norm,A_re,A_im,B_re,B_im,C_re,C_im\n";
  for (const ProbePoint& pt : pr.points) {
    csv += std::to_string(pt.n);
    csv += ',';
    csv += fmt(pt.lambda);
    csv += ',';
    csv += fmt(pt.norm);
    for (double v : {pt.A.real(), pt.A.imag(), pt.B.real(), pt.B.imag(),
                     pt.C.real(), pt.C.imag()}) {
      csv += ',';
      csv += fmt(v);
    }
    csv += '\n';
  }
  return csv;
}

std::string trajectory_csv(const EnergyTrace& trace) {
  std::string csv = "t,E,kinetic,potential,D,balance_residual\n";
  for (const EnergySample& s : trace.samples) {
    csv += fmt(s.t);
    csv += ',';
    csv += fmt(s.E);
    csv += ',';
    csv += fmt(s.kinetic);
    csv += ',';
    csv += fmt(s.potential);
    csv += ',';
    csv += fmt(s.D);
    csv += ',';
    csv += fmt(s.balance_residual);
    csv += '\n';
  }
  return csv;
}

// Mode rows carry (a, a', b, b', c, c'); the mean component goes in a row
// with n = 0 using the b/c columns for phi/psi. At most ~2001 time samples
// are emitted, strided evenly, always including the final state.
std::string state_csv(const std::vector<SpectralState>& states) {
  std::string csv = "t,n,a,a_t,b,b_t,c,c_t\n";
  const size_t count = states.size();
  const size_t stride = count > 2001 ? (count + 2000) / 2001 : 1;
  auto emit = [&](const SpectralState& s) {
    const std::string t = fmt(s.t);
    if (s.bc == BoundaryKind::MixedA3) {
      csv += t + ",0,0,0," + fmt(s.mean[0]) + ',' + fmt(s.mean[1]) + ',' +
             fmt(s.mean[2]) + ',' + fmt(s.mean[3]) + '\n';
    }
    for (int n = 1; n <= s.num_modes(); ++n) {
      const auto& m = s.modes[static_cast<size_t>(n - 1)];
      csv += t;
      csv += ',';
      csv += std::to_string(n);
      for (double v : m) {
        csv += ',';
        csv += fmt(v);
      }
      csv += '\n';
    }
  };
  for (size_t i = 0; i < count; i += stride) emit(states[i]);
  if (count > 0 && (count - 1) % stride != 0) emit(states[count - 1]);
  return csv;
}

void print_json(std::ostream& out, const RunOptions& opts,
                const std::string& artifact, const ojson& j) {
  std::string text = j.dump(2);
  text += '\n';
  write_artifact(opts, artifact, text);
  out << text;
}

bool gate(const RunConfig& cfg, const RunOptions& opts, std::ostream& err) {
  const ValidationReport rep = validate_all(cfg.material, cfg.bc);
  if (rep.ok()) return true;
  for (const std::string& m : rep.messages) err << m << '\n';
  if (opts.override_validation) {
    err << "validation failed; continuing (--override-validation)\n";
    return true;
  }
  err << "validation failed; pass --override-validation to run anyway\n";
  return false;
}

int cmd_validate(const RunConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const ValidationReport rep = validate_all(cfg.material, cfg.bc);
  print_json(out, opts, "validate.json", validation_json(rep));
  return rep.ok() ? 0 : 1;
}

int cmd_classify(const RunConfig& cfg, const RunOptions& opts, std::ostream& out) {
  print_json(out, opts, "classify.json", stability_json(cfg, opts));
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const SpectrumScan scan = abscissa_scan(cfg.material, cfg.bc, cfg.scan.n_max);
  write_artifact(opts, "scan.csv", scan_csv(scan));
  print_json(out, opts, "scan.json", scan_json(scan));
  return 0;
}

int cmd_probe(const RunConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const ProbeResult pr = probe_sequence(cfg.material, cfg.probe.n_list);
  write_artifact(opts, "probe.csv", probe_csv(pr));
  print_json(out, opts, "probe.json", probe_json(pr));
  return 0;
}

EnergyTrace run_trace(const RunConfig& cfg, std::vector<SpectralState>* keep) {
  const SimulateConfig& sim = cfg.simulate;
  const SpectralState s0 =
      project_initial(sim.initial, cfg.material, cfg.bc, sim.N);
  if (sim.integrator == Integrator::Exact && keep == nullptr) {
    return energy_trace(cfg.material, s0, sim.t_end, sim.dt);
  }
  std::vector<SpectralState> states =
      evolve(cfg.material, s0, sim.t_end, sim.dt, sim.integrator);
  EnergyTrace trace = trace_from_states(cfg.material, states, sim.dt);
  if (keep != nullptr) *keep = std::move(states);
  return trace;
}

int cmd_simulate(const RunConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const SimulateConfig& sim = cfg.simulate;
  std::vector<SpectralState> states;
  const EnergyTrace trace = run_trace(cfg, sim.full_state ? &states : nullptr);
  write_artifact(opts, "trajectory.csv", trajectory_csv(trace));
  if (sim.full_state) write_artifact(opts, "state.csv", state_csv(states));
  const DissipationReport check = dissipation_check(trace);
  ojson j;
  j["bc"] = to_string(cfg.bc);
  j["N"] = sim.N;
  j["dt"] = sim.dt;
  j["t_end"] = sim.t_end;
  j["integrator"] = sim.integrator == Integrator::Exact ? "exact" : "rk4";
  j["steps"] = static_cast<int>(trace.samples.size()) - 1;
  j["E0"] = trace.samples.front().E;
  j["E_final"] = trace.samples.back().E;
  j["max_pair_residual"] = check.max_pair_residual;
  j["cumulative_residual"] = check.cumulative_residual;
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_decay_fit(const RunConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const EnergyTrace trace = run_trace(cfg, nullptr);
  const DecayFit fit = fit_decay(trace, cfg.fit.window);
  ojson j;
  j["t0"] = fit.t0;
  j["t1"] = fit.t1;
  j["xi"] = fit.xi;
  j["amplitude"] = fit.amplitude;
  j["r2"] = fit.r2;
  print_json(out, opts, "decay_fit.json", j);
  return 0;
}

int cmd_report(const RunConfig& cfg, const RunOptions& opts, std::ostream& out) {
  ojson j = stability_json(cfg, opts);
  const SpectrumScan scan = abscissa_scan(cfg.material, cfg.bc, cfg.scan.n_max);
  write_artifact(opts, "scan.csv", scan_csv(scan));
  j["scan"] = scan_json(scan);
  const ProbeResult pr = probe_sequence(cfg.material, cfg.probe.n_list);
  write_artifact(opts, "probe.csv", probe_csv(pr));
  j["probe"] = probe_json(pr);
  print_json(out, opts, "report.json", j);
  return 0;
}

} // namespace

std::optional<Command> command_from_name(std::string_view name) {
  if (name == "validate") return Command::Validate;
  if (name == "classify") return Command::Classify;
  if (name == "spectrum") return Command::Spectrum;
  if (name == "probe") return Command::Probe;
  if (name == "simulate") return Command::Simulate;
  if (name == "decay-fit") return Command::DecayFit;
  if (name == "report") return Command::Report;
  return std::nullopt;
}

int run_command(Command cmd, const RunConfig& cfg, const RunOptions& opts,
                std::ostream& out, std::ostream& err) {
  try {
    if (cmd == Command::Validate) return cmd_validate(cfg, opts, out);
    if (!gate(cfg, opts, err)) return 1;
    switch (cmd) {
      case Command::Classify: return cmd_classify(cfg, opts, out);
      case Command::Spectrum: return cmd_spectrum(cfg, opts, out);
      case Command::Probe: return cmd_probe(cfg, opts, out);
      case Command::Simulate: return cmd_simulate(cfg, opts, out);
      case Command::DecayFit: return cmd_decay_fit(cfg, opts, out);
      case Command::Report: return cmd_report(cfg, opts, out);
      case Command::Validate: break;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what();
    if (e.line > 0) err << " (line " << e.line << ")";
    err << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace dporo
