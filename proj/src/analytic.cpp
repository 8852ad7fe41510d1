#include "bhed/analytic.hpp"

#include <cmath>
#include <limits>

#include "bhed/errors.hpp"

namespace bhed {

double omega_star(unsigned n, double interaction, double detuning) {
  if (n < 1) throw DomainError("threshold index starts at 1");
  if (!(interaction > 0.0)) throw DomainError("thresholds need a positive interaction");
  const double lead = 2.0 * interaction * n + detuning;
  const double radicand = lead * lead - detuning * detuning;
  if (radicand < 0.0) throw DomainError("negative radicand in transport threshold");
  return 0.5 * std::sqrt(radicand);
}

double ground_energy_localized(unsigned n, double interaction, double detuning, double omega) {
  const double dn = n;
  return 0.5 * detuning * dn - 0.5 * dn * std::sqrt(detuning * detuning + 4.0 * omega * omega) +
         0.5 * interaction * dn * (dn - 1.0);
}

ThresholdSet transport_thresholds(std::size_t atoms, double interaction, double detuning) {
  ThresholdSet set{interaction, detuning, {}};
  for (unsigned n = 1; n < atoms; ++n) set.thresholds.push_back(omega_star(n, interaction, detuning));
  return set;
}

double ground_energy_hopping_free(std::size_t atoms, double interaction, double detuning,
                                  double omega) {
  double best = std::numeric_limits<double>::infinity();
  for (unsigned n = 0; n <= atoms; ++n) {
    best = std::min(best, ground_energy_localized(n, interaction, detuning, omega));
  }
  return best;
}

}  // namespace bhed
