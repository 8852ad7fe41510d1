#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bhed {

using Occupation = std::uint16_t;

/// Occupation numbers of both internal components on every site.
/// Sites are 0-based: occ_e[i] is the number of |e> atoms on site i.
struct OccupationState {
  std::vector<Occupation> occ_e;
  std::vector<Occupation> occ_g;

  std::size_t sites() const noexcept { return occ_e.size(); }
  unsigned total(std::size_t site) const { return occ_e[site] + occ_g[site]; }
  unsigned atoms() const noexcept;

  friend bool operator==(const OccupationState&, const OccupationState&) = default;
};

/// Number of ways to place `atoms` bosons into `modes` modes, C(modes + atoms - 1, atoms).
/// Throws CapacityError when the count does not fit in std::size_t.
std::size_t fock_dimension(std::size_t modes, std::size_t atoms);

/// All Fock states of N atoms on M sites with two components, ordered in
/// descending lexicographic order of the mode vector (e_1..e_M, g_1..g_M).
/// Rank lookups are combinatorial, O(2M) per call. Immutable once built.
class BasisTable {
 public:
  BasisTable(std::size_t sites, std::size_t atoms);

  std::size_t sites() const noexcept { return sites_; }
  std::size_t atoms() const noexcept { return atoms_; }
  std::size_t modes() const noexcept { return 2 * sites_; }
  std::size_t dimension() const noexcept { return dim_; }

  /// Mode occupations of state k: [e_0..e_{M-1}, g_0..g_{M-1}].
  std::span<const Occupation> modes_of(std::size_t k) const {
    return {table_.data() + k * modes(), modes()};
  }
  Occupation occ_e(std::size_t k, std::size_t site) const { return table_[k * modes() + site]; }
  Occupation occ_g(std::size_t k, std::size_t site) const {
    return table_[k * modes() + sites_ + site];
  }
  unsigned occ_total(std::size_t k, std::size_t site) const {
    return occ_e(k, site) + occ_g(k, site);
  }

  OccupationState unrank(std::size_t k) const;

  /// Position of `s` in the table. Throws NotFoundError for states with the
  /// wrong site count or atom number.
  std::size_t rank(const OccupationState& s) const;
  std::size_t rank(std::span<const Occupation> mode_occupations) const;

  friend bool operator==(const BasisTable& a, const BasisTable& b) {
    return a.sites_ == b.sites_ && a.atoms_ == b.atoms_;
  }

 private:
  std::size_t sites_;
  std::size_t atoms_;
  std::size_t dim_;
  std::vector<Occupation> table_;
  // completions_[m][s]: ways to spread s atoms over m modes
  std::vector<std::vector<std::size_t>> completions_;

  std::size_t completions(std::size_t modes_left, std::size_t atoms_left) const;
};

}  // namespace bhed
