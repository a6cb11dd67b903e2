#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dporo/material.hpp"
#include "dporo/simulate.hpp"

namespace dporo {

struct ScanConfig {
  int n_max = 200;
  bool operator==(const ScanConfig&) const = default;
};

struct ProbeConfig {
  std::vector<int> n_list = {8, 16, 32, 64, 128, 256};
  bool operator==(const ProbeConfig&) const = default;
};

struct SimulateConfig {
  int N = 64;
  double dt = 1e-3;
  double t_end = 20.0;
  Integrator integrator = Integrator::Exact;
  ModeData initial;
  bool full_state = false;
  bool operator==(const SimulateConfig&) const = default;
};

struct FitConfig {
  double window = 0.6;
  bool operator==(const FitConfig&) const = default;
};

struct RunConfig {
  MaterialParams material;
  BoundaryKind bc = BoundaryKind::MixedA3;
  ScanConfig scan;
  ProbeConfig probe;
  SimulateConfig simulate;
  FitConfig fit;
  bool operator==(const RunConfig&) const = default;
};

// Flat sectioned key = value text:
//
//   [material]   all coefficient names of MaterialParams plus bc = A2|A3;
//                length is optional (default pi), everything else required
//   [scan]       n_max
//   [probe]      n_list = comma-separated increasing mode indices
//   [simulate]   N, dt, t_end, integrator = exact|rk4, full_state,
//                u0/u1/phi0/phi1/psi0/psi1 = comma-separated n:amplitude
//                pairs, phi0_mean/phi1_mean/psi0_mean/psi1_mean
//   [fit]        window
//
// '#' starts a comment. Sections other than [material] are optional and fall
// back to the defaults above. Unknown keys or sections, duplicate keys,
// malformed numbers and missing required keys throw ConfigError subtypes
// carrying the offending line number.
RunConfig parse_config(std::string_view text);

// Canonical text form: every section, every key, shortest round-trip number
// formatting. parse_config(emit_config(c)) == c exactly.
std::string emit_config(const RunConfig& c);

} // namespace dporo
