#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bhed/hamiltonian.hpp"

namespace bhed {

enum class Experiment { occupation, parity, entropy, gap, excited, ramp, thresholds };

std::string to_string(Experiment e);
std::optional<Experiment> parse_experiment(const std::string& name);

/// Everything needed to reproduce one data set. Parameters are in units of J.
struct SweepSpec {
  Experiment experiment = Experiment::occupation;
  std::size_t sites = 5;
  std::size_t atoms = 5;
  double hopping = 1.0;
  double interaction = 20.0;
  // per-component overrides of the two values above
  std::optional<double> hopping_e, hopping_g;
  std::optional<double> interaction_e, interaction_g, interaction_eg;
  double detuning = 0.0;
  double trap = 0.0;
  Boundary boundary = Boundary::open;

  double omega_min = 0.0;
  std::optional<double> omega_max;  // default 1.2 U (N - 1)
  double omega_step = 0.25;

  std::optional<std::size_t> cut;       // entropy: one cut instead of all
  std::optional<std::size_t> distance;  // parity: one distance instead of all
  std::size_t states = 5;               // excited: eigenstates tracked

  double ramp_rate = 1.0;
  std::optional<double> t_final;  // default: drive reaches 1.2 x the last threshold
  double dt_max = 0.01;
  double sample_interval = 0.1;

  double tol = 1e-10;
  std::uint64_t seed = 0x5eed2013;
  std::size_t threads = 0;  // 0: OpenMP default
  std::string out;          // empty or "-": stdout

  /// Model at end-site drive `omega`.
  ModelParams model(double omega) const;
  double effective_omega_max() const;
  double effective_t_final() const;
  /// omega_min, omega_min + step, ... up to omega_max (inclusive within 1e-9 step).
  std::vector<double> grid() const;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

struct ResultRow {
  bool ok = true;
  std::vector<double> values;
};

struct ResultTable {
  std::vector<std::string> header;  // "key = value" lines, written with a "# " prefix
  std::vector<std::string> columns;
  bool has_status = true;  // sweeps carry an ok/error column after the first one
  std::vector<ResultRow> rows;

  bool all_ok() const;
};

/// Runs the experiment. Grid points are independent and computed in
/// parallel; rows come back in grid order and do not depend on the thread
/// count. A grid point whose eigensolve fails is kept with ok = false.
/// Ramp failures throw PropagationError.
ResultTable run_sweep(const SweepSpec& spec);

/// CSV with a "# "-prefixed header block, one column line, then data.
/// Numbers carry 12 significant digits. `timestamp` adds a "# generated:"
/// line, the only line that differs between runs.
void write_csv(std::ostream& os, const ResultTable& table, bool timestamp = true);

std::string format_number(double x);

}  // namespace bhed
