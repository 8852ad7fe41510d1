#pragma once

#include <cstddef>
#include <vector>

namespace bhed {

// Closed-form results for the hopping-free chain without a trap, with the
// drive on the end site. n labels the number of atoms gathered on that site.

/// Drive strength at which the n- and (n+1)-atom branches of the ground
/// energy cross: (1/2) sqrt((2Un + Delta)^2 - Delta^2).
/// Throws DomainError for n < 1, U <= 0 or a negative radicand.
double omega_star(unsigned n, double interaction, double detuning);

/// Delta n / 2 - (n / 2) sqrt(Delta^2 + 4 Omega^2) + (U / 2) n (n - 1).
double ground_energy_localized(unsigned n, double interaction, double detuning, double omega);

struct ThresholdSet {
  double interaction = 0.0;
  double detuning = 0.0;
  std::vector<double> thresholds;  // thresholds[n-1] = omega_star(n)
};

/// omega_star(1) .. omega_star(atoms - 1).
ThresholdSet transport_thresholds(std::size_t atoms, double interaction, double detuning);

/// min over n = 0..atoms of ground_energy_localized.
double ground_energy_hopping_free(std::size_t atoms, double interaction, double detuning,
                                  double omega);

}  // namespace bhed
