#include "bhed/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <memory>
#include <ostream>

#include <omp.h>

#include "bhed/analytic.hpp"
#include "bhed/dynamics.hpp"
#include "bhed/eigensolver.hpp"
#include "bhed/errors.hpp"
#include "bhed/observables.hpp"

namespace bhed {

namespace {

constexpr const char* kExperimentNames[] = {"occupation", "parity",  "entropy",   "gap",
                                            "excited",    "ramp",    "thresholds"};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string to_string(Experiment e) { return kExperimentNames[static_cast<int>(e)]; }

std::optional<Experiment> parse_experiment(const std::string& name) {
  for (int i = 0; i < 7; ++i) {
    if (name == kExperimentNames[i]) return static_cast<Experiment>(i);
  }
  return std::nullopt;
}

ModelParams SweepSpec::model(double omega) const {
  ModelParams p = ModelParams::uniform(sites, hopping, interaction, detuning, trap, omega);
  if (hopping_e) p.hopping_e = *hopping_e;
  if (hopping_g) p.hopping_g = *hopping_g;
  if (interaction_e) p.interaction_e = *interaction_e;
  if (interaction_g) p.interaction_g = *interaction_g;
  if (interaction_eg) p.interaction_eg = *interaction_eg;
  return p;
}

double SweepSpec::effective_omega_max() const {
  if (omega_max) return *omega_max;
  if (atoms < 2 || interaction <= 0.0) return omega_min;
  return std::max(omega_min, 1.2 * interaction * static_cast<double>(atoms - 1));
}

double SweepSpec::effective_t_final() const {
  if (t_final) return *t_final;
  const double last = omega_star(static_cast<unsigned>(atoms - 1), interaction, detuning);
  return (1.2 * last - omega_min) / ramp_rate;
}

std::vector<double> SweepSpec::grid() const {
  const double hi = effective_omega_max();
  const auto n = static_cast<std::size_t>(std::floor((hi - omega_min) / omega_step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = omega_min + static_cast<double>(i) * omega_step;
  return g;
}

void SweepSpec::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid configuration: " + what); };
  if (sites < 1) fail("sites must be >= 1");
  try {
    fock_dimension(2 * sites, atoms);
  } catch (const CapacityError& e) {
    fail(e.what());
  }
  for (double u : {interaction, interaction_e.value_or(0.0), interaction_g.value_or(0.0),
                   interaction_eg.value_or(0.0)}) {
    if (u < 0.0) fail("interaction strengths must be >= 0");
  }
  if (!(omega_step > 0.0)) fail("omega_step must be > 0");
  if (effective_omega_max() < omega_min) fail("omega_max must be >= omega_min");
  if ((effective_omega_max() - omega_min) / omega_step > 1e7) fail("omega grid exceeds 1e7 points");
  if (cut && (*cut < 1 || *cut >= sites)) fail("cut must lie in [1, sites-1]");
  if (distance && (*distance < 1 || *distance >= sites)) fail("distance must lie in [1, sites-1]");
  if ((experiment == Experiment::entropy || experiment == Experiment::parity) && sites < 2) {
    fail(to_string(experiment) + " needs at least two sites");
  }
  if (experiment == Experiment::gap && fock_dimension(2 * sites, atoms) < 2) {
    fail("gap needs a basis of dimension >= 2");
  }
  if (experiment == Experiment::excited &&
      (states < 1 || states > fock_dimension(2 * sites, atoms))) {
    fail("states must lie in [1, basis dimension]");
  }
  if (experiment == Experiment::thresholds && !(interaction > 0.0)) {
    fail("thresholds need interaction > 0");
  }
  if (experiment == Experiment::ramp) {
    if (!(ramp_rate > 0.0)) fail("ramp_rate must be > 0");
    if (t_final && !(*t_final > 0.0)) fail("t_final must be > 0");
    if (!t_final && (atoms < 2 || !(interaction > 0.0))) {
      fail("t_final must be given when there is no transport threshold");
    }
    if (!(dt_max > 0.0)) fail("dt_max must be > 0");
    if (!(sample_interval > 0.0)) fail("sample_interval must be > 0");
  }
  if (!(tol > 0.0)) fail("tol must be > 0");
}

bool ResultTable::all_ok() const {
  for (const auto& r : rows) {
    if (!r.ok) return false;
  }
  return true;
}

namespace {

std::vector<std::string> header_block(const SweepSpec& spec) {
  const ModelParams p = spec.model(0.0);
  std::vector<std::string> h;
  auto add = [&](const std::string& k, const std::string& v) { h.push_back(k + " = " + v); };
  add("experiment", to_string(spec.experiment));
  add("sites", std::to_string(spec.sites));
  add("atoms", std::to_string(spec.atoms));
  add("hopping_e", format_number(p.hopping_e));
  add("hopping_g", format_number(p.hopping_g));
  add("interaction_e", format_number(p.interaction_e));
  add("interaction_g", format_number(p.interaction_g));
  add("interaction_eg", format_number(p.interaction_eg));
  add("detuning", format_number(p.detuning));
  add("trap", format_number(spec.trap));
  std::string profile;
  for (std::size_t i = 0; i < p.trap_e.size(); ++i) {
    profile += (i ? " " : "") + format_number(p.trap_e[i]);
  }
  add("trap_profile", profile);
  add("drive_site", std::to_string(spec.sites));
  add("boundary", spec.boundary == Boundary::open ? "open" : "periodic");
  if (spec.experiment == Experiment::ramp) {
    add("ramp_rate", format_number(spec.ramp_rate));
    add("omega_initial", format_number(spec.omega_min));
    add("t_final", format_number(spec.effective_t_final()));
    add("dt_max", format_number(spec.dt_max));
    add("sample_interval", format_number(spec.sample_interval));
  } else if (spec.experiment != Experiment::thresholds) {
    add("omega_min", format_number(spec.omega_min));
    add("omega_max", format_number(spec.effective_omega_max()));
    add("omega_step", format_number(spec.omega_step));
    add("tol", format_number(spec.tol));
    add("seed", std::to_string(spec.seed));
  }
  if (spec.atoms >= 2 && p.interaction_e > 0.0) {
    const auto th = transport_thresholds(spec.atoms, p.interaction_e, p.detuning);
    for (std::size_t n = 0; n < th.thresholds.size(); ++n) {
      add("omega_star_" + std::to_string(n + 1), format_number(th.thresholds[n]));
    }
  }
  return h;
}

std::vector<std::size_t> selected(std::optional<std::size_t> one, std::size_t sites) {
  if (one) return {*one};
  std::vector<std::size_t> all;
  for (std::size_t i = 1; i < sites; ++i) all.push_back(i);
  return all;
}

std::vector<std::string> static_columns(const SweepSpec& spec) {
  std::vector<std::string> c{"omega"};
  const std::size_t M = spec.sites;
  switch (spec.experiment) {
    case Experiment::occupation:
      c.push_back("energy");
      for (std::size_t i = 1; i <= M; ++i) c.push_back("n_" + std::to_string(i));
      c.push_back("ne_" + std::to_string(M));
      c.push_back("ng_" + std::to_string(M));
      break;
    case Experiment::parity:
      for (auto d : selected(spec.distance, M)) c.push_back("C_" + std::to_string(d));
      break;
    case Experiment::entropy:
      for (auto l : selected(spec.cut, M)) c.push_back("S_" + std::to_string(l));
      break;
    case Experiment::gap:
      c.insert(c.end(), {"E_0", "E_1", "gap", "log_gap"});
      break;
    case Experiment::excited:
      for (std::size_t j = 1; j <= spec.states; ++j) c.push_back("E_" + std::to_string(j));
      for (std::size_t j = 1; j <= spec.states; ++j) c.push_back("nM_" + std::to_string(j));
      break;
    default:
      break;
  }
  return c;
}

std::vector<double> static_point(const SweepSpec& spec,
                                 const std::shared_ptr<const BasisTable>& basis,
                                 const SparseOperator& drive, double omega) {
  const SparseOperator h = build_hamiltonian(spec.model(omega), *basis, spec.boundary);
  LanczosOptions opts;
  opts.seed = spec.seed;
  const std::size_t M = spec.sites;
  std::vector<double> v{omega};

  if (spec.experiment == Experiment::excited) {
    const EigenSolution sol = lowest_eigenpairs(h, spec.states, spec.tol, opts);
    for (double e : sol.energies) v.push_back(e);
    for (std::size_t j = 0; j < sol.size(); ++j) {
      v.push_back(site_occupation(sol.state(basis, j), M - 1).total);
    }
    return v;
  }

  const EigenSolution sol = ground_state(h, &drive, spec.tol, opts);
  const StateVector psi = sol.state(basis, 0);
  switch (spec.experiment) {
    case Experiment::occupation: {
      v.push_back(sol.energies[0]);
      for (std::size_t i = 0; i < M; ++i) v.push_back(site_occupation(psi, i).total);
      const auto end = site_occupation(psi, M - 1);
      v.push_back(end.n_e);
      v.push_back(end.n_g);
      break;
    }
    case Experiment::parity:
      for (auto d : selected(spec.distance, M)) v.push_back(parity_correlation(psi, d));
      break;
    case Experiment::entropy:
      for (auto l : selected(spec.cut, M)) {
        v.push_back(entanglement_entropy(schmidt_spectrum(psi, l)));
      }
      break;
    case Experiment::gap: {
      const double gap = energy_gap(sol);
      v.insert(v.end(), {sol.energies[0], sol.energies[1], gap, std::log(gap)});
      break;
    }
    default:
      break;
  }
  return v;
}

ResultTable run_static(const SweepSpec& spec) {
  ResultTable table;
  table.header = header_block(spec);
  table.columns = static_columns(spec);
  const auto basis = std::make_shared<const BasisTable>(spec.sites, spec.atoms);
  const SparseOperator drive = build_drive_operator(*basis, spec.sites - 1);
  const std::vector<double> grid = spec.grid();
  table.rows.resize(grid.size());
  const std::size_t width = table.columns.size();
  const auto n = static_cast<std::ptrdiff_t>(grid.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto& row = table.rows[static_cast<std::size_t>(i)];
    try {
      row.values = static_point(spec, basis, drive, grid[static_cast<std::size_t>(i)]);
    } catch (const Error&) {
      row.ok = false;
      row.values.assign(width, kNaN);
      row.values[0] = grid[static_cast<std::size_t>(i)];
    }
  }
  return table;
}

ResultTable run_ramp(const SweepSpec& spec) {
  ResultTable table;
  table.header = header_block(spec);
  table.has_status = false;
  const auto basis = std::make_shared<const BasisTable>(spec.sites, spec.atoms);
  const std::size_t end = spec.sites - 1;
  const std::vector<Probe> probes{{Probe::Kind::drive},
                                  {Probe::Kind::occupation_total, end},
                                  {Probe::Kind::occupation_e, end},
                                  {Probe::Kind::occupation_g, end},
                                  {Probe::Kind::energy},
                                  {Probe::Kind::norm}};
  const ModelParams params = spec.model(spec.omega_min);
  const StateVector psi0 = ramp_initial_state(params, basis, spec.boundary);
  RampSchedule ramp{spec.ramp_rate, spec.effective_t_final(), spec.dt_max, spec.sample_interval};
  const TimeSeries ts = evolve(params, basis, ramp, psi0, probes, spec.boundary);
  table.columns = {"t"};
  table.columns.insert(table.columns.end(), ts.names.begin(), ts.names.end());
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    ResultRow row{true, {ts.times[i]}};
    row.values.insert(row.values.end(), ts.rows[i].begin(), ts.rows[i].end());
    table.rows.push_back(std::move(row));
  }
  return table;
}

ResultTable run_thresholds(const SweepSpec& spec) {
  ResultTable table;
  table.header = header_block(spec);
  table.has_status = false;
  table.columns = {"n", "omega_star", "energy_at_threshold"};
  const double u = spec.interaction_e.value_or(spec.interaction);
  const auto th = transport_thresholds(spec.atoms, u, spec.detuning);
  for (std::size_t n = 1; n <= th.thresholds.size(); ++n) {
    const double w = th.thresholds[n - 1];
    table.rows.push_back(
        {true,
         {static_cast<double>(n), w,
          ground_energy_localized(static_cast<unsigned>(n), u, spec.detuning, w)}});
  }
  return table;
}

}  // namespace

ResultTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  if (spec.threads > 0) omp_set_num_threads(static_cast<int>(spec.threads));
  switch (spec.experiment) {
    case Experiment::ramp: return run_ramp(spec);
    case Experiment::thresholds: return run_thresholds(spec);
    default: return run_static(spec);
  }
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

void write_csv(std::ostream& os, const ResultTable& table, bool timestamp) {
  for (const auto& h : table.header) os << "# " << h << '\n';
  if (timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated: " << buf << '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << ',';
    os << table.columns[c];
    if (c == 0 && table.has_status) os << ",status";
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.values.size(); ++c) {
      if (c) os << ',';
      os << format_number(row.values[c]);
      if (c == 0 && table.has_status) os << (row.ok ? ",ok" : ",error");
    }
    os << '\n';
  }
}

}  // namespace bhed
