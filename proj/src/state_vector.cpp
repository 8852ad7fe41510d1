#include "bhed/state_vector.hpp"

#include <cmath>
#include <numeric>

#include "bhed/errors.hpp"

namespace bhed {

StateVector::StateVector(std::shared_ptr<const BasisTable> basis, std::vector<cplx> amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  if (!basis_) throw DomainError("state vector needs a basis");
  if (amps_.size() != basis_->dimension()) {
    throw DimensionError("amplitude count does not match the basis dimension");
  }
}

StateVector::StateVector(std::shared_ptr<const BasisTable> basis)
    : StateVector(basis, std::vector<cplx>(basis ? basis->dimension() : 0)) {}

StateVector StateVector::basis_state(std::shared_ptr<const BasisTable> basis, std::size_t k) {
  StateVector v(std::move(basis));
  if (k >= v.size()) throw DomainError("basis index outside the table");
  v.amps_[k] = 1.0;
  return v;
}

StateVector StateVector::from_real(std::shared_ptr<const BasisTable> basis,
                                   std::span<const double> amplitudes) {
  return StateVector(std::move(basis), std::vector<cplx>(amplitudes.begin(), amplitudes.end()));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

cplx StateVector::inner(const StateVector& other) const {
  if (other.size() != size()) throw DimensionError("inner product of mismatched vectors");
  cplx s{};
  for (std::size_t k = 0; k < amps_.size(); ++k) s += std::conj(amps_[k]) * other.amps_[k];
  return s;
}

}  // namespace bhed
