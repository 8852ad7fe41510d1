#pragma once

// Single-threaded reference versions of the parallel kernels. They follow a
// different code path on purpose and are used by the tests and the benchmark.

#include <span>

#include "bhed/hamiltonian.hpp"
#include "bhed/sparse_operator.hpp"

namespace bhed::serial {

void apply(const SparseOperator& a, std::span<const double> x, std::span<double> y);
void apply(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y);

/// Term-by-term triplet assembly of the same Hamiltonian as
/// bhed::build_hamiltonian.
SparseOperator build_hamiltonian(const ModelParams& params, const BasisTable& basis,
                                 Boundary boundary = Boundary::open);

}  // namespace bhed::serial
