// Command-line front end: one subcommand per data set, CSV on stdout or --out.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bhed/config.hpp"
#include "bhed/errors.hpp"
#include "bhed/experiment.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Flag {
  const char* name;  // also the config key
  const char* help;
};

constexpr Flag kFlags[] = {
    {"sites", "number of lattice sites M"},
    {"atoms", "number of atoms N"},
    {"hopping", "tunnelling J for both components"},
    {"interaction", "on-site interaction U (intra- and inter-component)"},
    {"detuning", "laser detuning DELTA"},
    {"trap", "harmonic confinement strength EPS"},
    {"omega-min", "first drive strength of the sweep (ramp: initial drive)"},
    {"omega-max", "last drive strength (default 1.2 U (N-1))"},
    {"omega-step", "drive grid spacing"},
    {"cut", "entropy: sites in the right block (default: all cuts)"},
    {"distance", "parity: distance from the driven site (default: all)"},
    {"states", "excited: number of eigenstates"},
    {"ramp-rate", "ramp: drive rate V, Omega(t) = V t"},
    {"t-final", "ramp: end time"},
    {"dt-max", "ramp: largest time step"},
    {"sample-interval", "ramp: output spacing in time"},
    {"tol", "eigenpair residual tolerance"},
    {"seed", "Lanczos start-vector seed"},
    {"threads", "worker threads"},
    {"boundary", "open or periodic"},
    {"out", "output CSV file (default stdout)"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalisation of a driven two-component Bose-Hubbard chain"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> values;
  for (const auto& f : kFlags) {
    app.add_option_function<std::string>(
        std::string("--") + f.name, [&values, key = std::string(f.name)](const std::string& v) { values[key] = v; },
        f.help);
  }
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file; flags override it")
      ->check(CLI::ExistingFile);
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp, "omit the '# generated:' header line");

  const std::pair<const char*, const char*> commands[] = {
      {"occupation", "ground-state occupations versus drive"},
      {"parity", "two-site parity correlations versus drive"},
      {"entropy", "bipartite entanglement entropy versus drive"},
      {"gap", "lowest two energies and the gap versus drive"},
      {"excited", "energies and end-site occupation of the lowest eigenstates"},
      {"ramp", "time evolution under a linear drive ramp"},
      {"thresholds", "analytic transport thresholds"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  bhed::SweepSpec spec;
  try {
    if (!config_path.empty()) spec = bhed::load_config(config_path);
    spec.experiment = *bhed::parse_experiment(app.get_subcommands().front()->get_name());
    for (const auto& [key, value] : values) bhed::apply_setting(spec, key, value);
    spec.validate();
  } catch (const bhed::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const bhed::ResultTable table = bhed::run_sweep(spec);
    if (spec.out.empty() || spec.out == "-") {
      bhed::write_csv(std::cout, table, !no_timestamp);
    } else {
      std::ofstream out(spec.out);
      if (!out) {
        std::cerr << "error: cannot write '" << spec.out << "'\n";
        return kExitUsage;
      }
      bhed::write_csv(out, table, !no_timestamp);
    }
    if (!table.all_ok()) {
      std::cerr << "warning: some grid points failed to converge (status=error)\n";
      return kExitNumerical;
    }
  } catch (const bhed::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const bhed::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
