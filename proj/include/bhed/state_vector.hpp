#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "bhed/fock_basis.hpp"

namespace bhed {

using cplx = std::complex<double>;

/// Complex amplitudes over a basis table. Physical states are unit-norm;
/// intermediate results (H applied to a state) need not be.
class StateVector {
 public:
  StateVector(std::shared_ptr<const BasisTable> basis, std::vector<cplx> amplitudes);

  /// All-zero vector.
  explicit StateVector(std::shared_ptr<const BasisTable> basis);

  static StateVector basis_state(std::shared_ptr<const BasisTable> basis, std::size_t k);
  static StateVector from_real(std::shared_ptr<const BasisTable> basis,
                               std::span<const double> amplitudes);

  const BasisTable& basis() const noexcept { return *basis_; }
  const std::shared_ptr<const BasisTable>& basis_ptr() const noexcept { return basis_; }

  std::size_t size() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  cplx operator[](std::size_t k) const { return amps_[k]; }

  double norm() const;
  void normalize();
  bool is_normalized(double tol = 1e-10) const;

  /// <this|other>
  cplx inner(const StateVector& other) const;

 private:
  std::shared_ptr<const BasisTable> basis_;
  std::vector<cplx> amps_;
};

}  // namespace bhed
