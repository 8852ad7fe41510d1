#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "bhed/hamiltonian.hpp"
#include "bhed/state_vector.hpp"

namespace bhed {

/// Linear ramp of the end-site drive, Omega(t) = Omega_0 + rate * t.
struct RampSchedule {
  double rate = 1.0;       // energy per unit time; 0 freezes the Hamiltonian
  double t_final = 1.0;
  double dt_max = 0.01;
  double sample_interval = 0.1;

  void validate() const;
};

struct PropagatorOptions {
  /// Upper bound on ||H(t)|| dt for a single step.
  double norm_step_budget = 0.5;
  std::size_t krylov_dim = 16;
  /// Local error target of the Krylov exponential.
  double krylov_tol = 1e-12;
  /// Steps are halved on Krylov failure down to this size before giving up.
  double dt_min = 1e-10;
};

/// Quantity sampled along a trajectory.
struct Probe {
  enum class Kind { occupation_total, occupation_e, occupation_g, energy, norm, drive };
  Kind kind;
  std::size_t site = 0;  // used by the occupation kinds

  std::string name() const;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;  // rows[i][j]: probe j at times[i]
  StateVector final_state;
};

/// Integrates i d/dt psi = [H_static + rate * t * D] psi, where H_static is the
/// Hamiltonian of `params` and D the unit drive on the last site, from t = 0
/// to ramp.t_final. Each step applies the Krylov exponential of the midpoint
/// Hamiltonian. Samples are taken at multiples of sample_interval and at
/// t_final. Throws PropagationError when the step size underflows.
TimeSeries evolve(const ModelParams& params, std::shared_ptr<const BasisTable> basis,
                  const RampSchedule& ramp, const StateVector& psi0,
                  const std::vector<Probe>& probes, Boundary boundary = Boundary::open,
                  const PropagatorOptions& options = {});

/// Ground state of `params` with degeneracies resolved towards a small
/// positive end-site drive (the state a ramp starting at zero drive follows).
StateVector ramp_initial_state(const ModelParams& params,
                               std::shared_ptr<const BasisTable> basis,
                               Boundary boundary = Boundary::open);

}  // namespace bhed
