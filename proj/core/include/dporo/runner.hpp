#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "dporo/config.hpp"

namespace dporo {

enum class Command { Validate, Classify, Spectrum, Probe, Simulate, DecayFit, Report };

std::optional<Command> command_from_name(std::string_view name);

struct RunOptions {
  std::string out_dir = ".";  // file artifacts land here; empty disables files
  double tol = 1e-9;          // zero tolerance for the chi classification
  bool override_validation = false;
};

// Executes one command against a parsed config. The primary JSON artifact is
// printed to `out`; diagnostics go to `err`; file artifacts (fixed names:
// validate.json, classify.json, scan.csv, scan.json, probe.csv, probe.json,
// trajectory.csv, state.csv, decay_fit.json, report.json) are written under
// out_dir. Every command except validate refuses to run on a failing
// validation unless override_validation is set.
//
// Exit codes: 0 success, 1 validation failure (or rejected input data),
// 2 config error, 3 numerical failure. Output is byte-deterministic for a
// given config: numbers are printed as shortest round-trip decimals.
int run_command(Command cmd, const RunConfig& cfg, const RunOptions& opts,
                std::ostream& out, std::ostream& err);

} // namespace dporo
