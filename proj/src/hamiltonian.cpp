#include "bhed/hamiltonian.hpp"

#include <cmath>
#include <string>

#include "bhed/errors.hpp"

namespace bhed {

ModelParams ModelParams::uniform(std::size_t sites, double hopping, double interaction,
                                 double detuning, double trap, double end_drive) {
  ModelParams p;
  p.hopping_e = p.hopping_g = hopping;
  p.interaction_e = p.interaction_g = p.interaction_eg = interaction;
  p.trap_e = harmonic_trap(sites, trap);
  p.trap_g = p.trap_e;
  p.detuning = detuning;
  p.drive.assign(sites, 0.0);
  p.set_end_drive(end_drive);
  return p;
}

void ModelParams::set_end_drive(double omega) {
  if (drive.empty()) throw DomainError("model has no sites");
  drive.back() = omega;
}

void ModelParams::validate(std::size_t sites) const {
  if (trap_e.size() != sites || trap_g.size() != sites || drive.size() != sites) {
    throw DomainError("per-site parameter arrays must have length " + std::to_string(sites));
  }
  auto finite = [](double x) { return std::isfinite(x); };
  bool ok = finite(hopping_e) && finite(hopping_g) && finite(interaction_e) &&
            finite(interaction_g) && finite(interaction_eg) && finite(detuning);
  for (std::size_t i = 0; i < sites; ++i) {
    ok = ok && finite(trap_e[i]) && finite(trap_g[i]) && finite(drive[i]);
  }
  if (!ok) throw DomainError("model parameters must be finite");
}

std::vector<double> harmonic_trap(std::size_t sites, double eps) {
  std::vector<double> out(sites);
  const double centre = (static_cast<double>(sites) - 1.0) / 2.0;
  for (std::size_t i = 0; i < sites; ++i) {
    const double x = static_cast<double>(i) - centre;
    out[i] = x * x * eps;
  }
  return out;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> bonds(std::size_t sites, Boundary boundary) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < sites; ++i) out.emplace_back(i, i + 1);
  // a wrap bond on two sites would duplicate (0,1)
  if (boundary == Boundary::periodic && sites >= 3) out.emplace_back(sites - 1, 0);
  return out;
}

// Nonzeros of column k, i.e. H|k> = sum_j H_jk |j>.
void assemble_row(const ModelParams& p, const BasisTable& basis,
                  std::span<const std::pair<std::size_t, std::size_t>> links, std::size_t k,
                  std::vector<Occupation>& work, SparseOperator::Row& row) {
  const std::size_t M = basis.sites();
  const auto occ = basis.modes_of(k);
  row.clear();

  double diag = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const double ne = occ[i];
    const double ng = occ[M + i];
    diag += p.interaction_eg * ne * ng;
    diag += 0.5 * p.interaction_e * ne * (ne - 1.0);
    diag += 0.5 * p.interaction_g * ng * (ng - 1.0);
    diag += p.trap_e[i] * ne + p.trap_g[i] * ng;
    diag += p.detuning * ne;
  }
  if (diag != 0.0) row.emplace_back(k, diag);

  // a^dag_to a_from on mode indices, scaled by `coupling`
  auto hop = [&](std::size_t to, std::size_t from, double coupling) {
    if (occ[from] == 0) return;
    work.assign(occ.begin(), occ.end());
    const double amp = std::sqrt(static_cast<double>(work[from]) * (work[to] + 1.0));
    --work[from];
    ++work[to];
    row.emplace_back(basis.rank(work), coupling * amp);
  };

  for (const auto& [i, j] : links) {
    if (p.hopping_e != 0.0) {
      hop(i, j, -p.hopping_e);
      hop(j, i, -p.hopping_e);
    }
    if (p.hopping_g != 0.0) {
      hop(M + i, M + j, -p.hopping_g);
      hop(M + j, M + i, -p.hopping_g);
    }
  }
  for (std::size_t i = 0; i < M; ++i) {
    if (p.drive[i] == 0.0) continue;
    hop(i, M + i, p.drive[i]);  // e^dag g
    hop(M + i, i, p.drive[i]);  // g^dag e
  }
}

}  // namespace

SparseOperator build_hamiltonian(const ModelParams& params, const BasisTable& basis,
                                 Boundary boundary) {
  params.validate(basis.sites());
  const auto links = bonds(basis.sites(), boundary);
  const std::size_t dim = basis.dimension();
  std::vector<SparseOperator::Row> rows(dim);
  const auto n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel
  {
    std::vector<Occupation> work;
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      assemble_row(params, basis, links, static_cast<std::size_t>(k), work,
                   rows[static_cast<std::size_t>(k)]);
    }
  }
  return SparseOperator::from_rows(dim, std::move(rows));
}

SparseOperator build_drive_operator(const BasisTable& basis, std::size_t site) {
  if (site >= basis.sites()) throw DomainError("drive site outside the chain");
  ModelParams p = ModelParams::uniform(basis.sites(), 0.0, 0.0);
  p.drive[site] = 1.0;
  return build_hamiltonian(p, basis);
}

StateVector matvec(const SparseOperator& op, const StateVector& v) {
  if (op.dim() != v.size()) throw DimensionError("operator and state dimensions differ");
  StateVector out(v.basis_ptr());
  apply(op, v.amplitudes(), out.amplitudes());
  return out;
}

cplx expectation(const SparseOperator& op, const StateVector& v) {
  return v.inner(matvec(op, v));
}

}  // namespace bhed
