#pragma once

#include <cstddef>
#include <vector>

#include "bhed/eigensolver.hpp"
#include "bhed/state_vector.hpp"

namespace bhed {

// Sites are 0-based throughout; the driven end of the chain is sites()-1.
// Every function expects a unit-norm state and throws DomainError otherwise.

struct SiteOccupation {
  double n_e = 0.0;
  double n_g = 0.0;
  double total = 0.0;
};

SiteOccupation site_occupation(const StateVector& psi, std::size_t site);

/// <exp(i pi n_site)> with n the total (e + g) occupation.
double parity(const StateVector& psi, std::size_t site);

/// |<s_a s_b> - <s_a><s_b>| for two arbitrary sites.
double parity_covariance(const StateVector& psi, std::size_t site_a, std::size_t site_b);

/// Two-site parity correlation between the driven end site and the site
/// `distance` positions before it; 1 <= distance <= sites-1.
double parity_correlation(const StateVector& psi, std::size_t distance);

/// Schmidt coefficients for the split into the first sites()-cut sites (left)
/// and the last `cut` sites (right).
struct SchmidtSpectrum {
  std::size_t cut = 0;
  std::vector<double> coefficients;  // positive, descending
  std::size_t left_patterns = 0;     // distinct occupation patterns on each side
  std::size_t right_patterns = 0;
};

/// Coefficients below this are dropped before the entropy is taken.
inline constexpr double kSchmidtFloor = 1e-12;

SchmidtSpectrum schmidt_spectrum(const StateVector& psi, std::size_t cut);

/// -sum lambda^2 ln lambda^2.
double entanglement_entropy(const SchmidtSpectrum& spectrum);

/// E_1 - E_0; needs at least two eigenpairs.
double energy_gap(const EigenSolution& solution);

}  // namespace bhed
