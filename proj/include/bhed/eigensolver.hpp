#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "bhed/sparse_operator.hpp"
#include "bhed/state_vector.hpp"

namespace bhed {

struct LanczosOptions {
  std::uint64_t seed = 0x5eed2013;
  /// Krylov dimension cap per pass; 0 means the operator dimension.
  std::size_t max_iterations = 0;
  /// Pairs computed beyond the requested k, to stabilise near level crossings.
  std::size_t extra_pairs = 2;
  /// Run a final pass in the complement of the converged vectors to pick up
  /// copies of exactly degenerate levels that a single Krylov space misses.
  bool verify_degeneracy = true;
};

/// Lowest eigenpairs, energies ascending. Column j of `vectors` is the unit
/// eigenvector of energies[j], with its largest-magnitude entry positive.
struct EigenSolution {
  std::vector<double> energies;
  Eigen::MatrixXd vectors;
  std::vector<double> residuals;  // ||H v - E v|| per pair

  std::size_t size() const noexcept { return energies.size(); }
  StateVector state(std::shared_ptr<const BasisTable> basis, std::size_t j) const;
};

/// k lowest eigenpairs by Lanczos with full reorthogonalisation and locking.
/// Every returned pair has residual <= tol. Deterministic for a fixed seed.
/// Throws ConvergenceError (carrying the best residual) at the iteration cap.
EigenSolution lowest_eigenpairs(const SparseOperator& op, std::size_t k, double tol = 1e-10,
                                const LanczosOptions& options = {});

/// Ground state with degeneracies lifted by `tie_breaker`: inside an exactly
/// degenerate lowest level (relative spread below `degeneracy_tol`) the
/// returned vector minimises <tie_breaker>. This is the limit of the ground
/// state of op + s * tie_breaker as s -> 0+. At least two pairs are returned
/// (when dim >= 2) so the gap is available.
EigenSolution ground_state(const SparseOperator& op, const SparseOperator* tie_breaker,
                           double tol = 1e-10, const LanczosOptions& options = {},
                           double degeneracy_tol = 1e-8);

struct DenseSpectrum {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXd vectors;
};

inline constexpr std::size_t kDenseOracleCap = 4000;

/// Full spectrum by dense symmetric diagonalisation. Verification only.
DenseSpectrum dense_oracle(const SparseOperator& op, std::size_t max_dim = kDenseOracleCap);

/// Flip the sign of v so that its largest-magnitude entry is positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v);

}  // namespace bhed
