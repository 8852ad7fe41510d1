#include "bhed/serial_kernels.hpp"

#include <cmath>

#include "bhed/errors.hpp"

namespace bhed::serial {

namespace {

template <typename T>
void csr_apply(const SparseOperator& a, std::span<const T> x, std::span<T> y) {
  if (x.size() != a.dim() || y.size() != a.dim()) {
    throw DimensionError("vector length does not match operator dimension");
  }
  const auto rp = a.row_ptr();
  const auto cols = a.cols();
  const auto vals = a.values();
  for (std::size_t r = 0; r < a.dim(); ++r) {
    T acc{};
    for (std::size_t p = rp[r]; p < rp[r + 1]; ++p) acc += vals[p] * x[cols[p]];
    y[r] = acc;
  }
}

enum class Component { e, g };

std::vector<Occupation>& occupations(OccupationState& s, Component c) {
  return c == Component::e ? s.occ_e : s.occ_g;
}

// Appends coupling * a^dag_{to} a_{from} acting on every basis state.
void add_transfer(const BasisTable& basis, Component to_c, std::size_t to, Component from_c,
                  std::size_t from, double coupling,
                  std::vector<SparseOperator::Entry>& triplets) {
  if (coupling == 0.0) return;
  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    OccupationState s = basis.unrank(k);
    auto& src = occupations(s, from_c);
    if (src[from] == 0) continue;
    double amp = std::sqrt(static_cast<double>(src[from]));
    --src[from];
    auto& dst = occupations(s, to_c);
    amp *= std::sqrt(dst[to] + 1.0);
    ++dst[to];
    triplets.push_back({basis.rank(s), k, coupling * amp});
  }
}

}  // namespace

void apply(const SparseOperator& a, std::span<const double> x, std::span<double> y) {
  csr_apply(a, x, y);
}

void apply(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y) {
  csr_apply(a, x, y);
}

SparseOperator build_hamiltonian(const ModelParams& p, const BasisTable& basis,
                                 Boundary boundary) {
  p.validate(basis.sites());
  const std::size_t M = basis.sites();
  std::vector<SparseOperator::Entry> triplets;

  for (std::size_t k = 0; k < basis.dimension(); ++k) {
    const OccupationState s = basis.unrank(k);
    double d = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      const double ne = s.occ_e[i];
      const double ng = s.occ_g[i];
      d += p.interaction_eg * ne * ng + 0.5 * p.interaction_e * ne * (ne - 1.0) +
           0.5 * p.interaction_g * ng * (ng - 1.0) + p.trap_e[i] * ne + p.trap_g[i] * ng +
           p.detuning * ne;
    }
    triplets.push_back({k, k, d});
  }

  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t i = 0; i + 1 < M; ++i) links.emplace_back(i, i + 1);
  if (boundary == Boundary::periodic && M >= 3) links.emplace_back(M - 1, 0);

  for (const auto& [i, j] : links) {
    for (auto c : {Component::e, Component::g}) {
      const double J = c == Component::e ? p.hopping_e : p.hopping_g;
      add_transfer(basis, c, i, c, j, -J, triplets);
      add_transfer(basis, c, j, c, i, -J, triplets);
    }
  }
  for (std::size_t i = 0; i < M; ++i) {
    add_transfer(basis, Component::e, i, Component::g, i, p.drive[i], triplets);
    add_transfer(basis, Component::g, i, Component::e, i, p.drive[i], triplets);
  }
  return SparseOperator::from_entries(basis.dimension(), triplets);
}

}  // namespace bhed::serial
