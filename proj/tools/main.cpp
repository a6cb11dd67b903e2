#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dporo/config.hpp"
#include "dporo/errors.hpp"
#include "dporo/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw dporo::ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral stability analysis and simulation of a damped "
               "double-porosity elastic bar"};
  app.require_subcommand(1);

  std::string config_path;
  dporo::RunOptions opts;

  const std::pair<const char*, const char*> subs[] = {
      {"validate", "check coefficient admissibility and report diagnostics"},
      {"classify", "compute chi0/chi1 and the decay regime"},
      {"spectrum", "scan per-mode spectral abscissae (scan.csv, scan.json)"},
      {"probe", "resolvent norms along the elastic resonance sequence"},
      {"simulate", "evolve initial data and record the energy trajectory"},
      {"decay-fit", "fit an exponential decay rate to the energy trajectory"},
      {"report", "bundle validation, classification, scan and probe"},
  };
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "parameter file")->required();
    sub->add_option("--out", opts.out_dir, "directory for file artifacts");
    sub->add_option("--tol", opts.tol, "relative zero tolerance for chi0/chi1");
    sub->add_flag("--override-validation", opts.override_validation,
                  "run the analysis even if validation fails");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const auto cmd = dporo::command_from_name(name);
  if (!cmd) {
    std::cerr << "unknown command '" << name << "'\n";
    return 2;
  }

  try {
    const dporo::RunConfig cfg = dporo::parse_config(read_file(config_path));
    return dporo::run_command(*cmd, cfg, opts, std::cout, std::cerr);
  } catch (const dporo::ConfigError& e) {
    std::cerr << "config error: " << e.what();
    if (e.line > 0) std::cerr << " (line " << e.line << ")";
    std::cerr << '\n';
    return 2;
  } catch (const dporo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
