#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "bhed/fock_basis.hpp"
#include "bhed/sparse_operator.hpp"
#include "bhed/state_vector.hpp"

namespace bhed {

enum class Boundary { open, periodic };

/// Couplings of the driven two-component Bose-Hubbard chain, in units of J.
/// Per-site arrays are indexed by 0-based site.
struct ModelParams {
  double hopping_e = 1.0;
  double hopping_g = 1.0;
  double interaction_e = 0.0;
  double interaction_g = 0.0;
  double interaction_eg = 0.0;
  std::vector<double> trap_e;  // site energies of |e>
  std::vector<double> trap_g;  // site energies of |g>
  double detuning = 0.0;
  std::vector<double> drive;  // laser coupling on each site

  std::size_t sites() const noexcept { return drive.size(); }

  /// Equal couplings for both components, harmonic trap of strength `trap`
  /// and the drive `end_drive` on the last site only.
  static ModelParams uniform(std::size_t sites, double hopping, double interaction,
                             double detuning = 0.0, double trap = 0.0, double end_drive = 0.0);

  void set_end_drive(double omega);

  /// Throws DomainError on mismatched array lengths or non-finite values.
  void validate(std::size_t sites) const;
};

/// eps * (i - c)^2 with c the chain centre; for five sites this is (i-3)^2 eps
/// in 1-based numbering.
std::vector<double> harmonic_trap(std::size_t sites, double eps);

/// Full Hamiltonian (lattice part plus laser drive) on the fixed-N basis.
/// Rows are assembled in parallel.
SparseOperator build_hamiltonian(const ModelParams& params, const BasisTable& basis,
                                 Boundary boundary = Boundary::open);

/// e_i^dag g_i + h.c. on one site, i.e. the drive term with unit strength.
SparseOperator build_drive_operator(const BasisTable& basis, std::size_t site);

/// H v. Throws DimensionError when the sizes disagree.
StateVector matvec(const SparseOperator& op, const StateVector& v);

/// <v|H|v>; real for symmetric H.
cplx expectation(const SparseOperator& op, const StateVector& v);

}  // namespace bhed
