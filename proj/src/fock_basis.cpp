#include "bhed/fock_basis.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "bhed/errors.hpp"

namespace bhed {

unsigned OccupationState::atoms() const noexcept {
  return std::accumulate(occ_e.begin(), occ_e.end(), 0u) +
         std::accumulate(occ_g.begin(), occ_g.end(), 0u);
}

namespace {

constexpr std::size_t kMaxIndex = std::numeric_limits<std::size_t>::max();

// C(n, k) with overflow detection; returns false on overflow.
bool checked_binomial(std::size_t n, std::size_t k, std::size_t& out) {
  if (k > n) {
    out = 0;
    return true;
  }
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < k; ++i) {
    acc = acc * (n - i) / (i + 1);
    if (acc > kMaxIndex) return false;
  }
  out = static_cast<std::size_t>(acc);
  return true;
}

}  // namespace

std::size_t fock_dimension(std::size_t modes, std::size_t atoms) {
  if (modes == 0) return atoms == 0 ? 1 : 0;
  std::size_t out = 0;
  if (!checked_binomial(modes + atoms - 1, atoms, out)) {
    throw CapacityError("Fock dimension C(" + std::to_string(modes + atoms - 1) + ", " +
                        std::to_string(atoms) + ") exceeds the index range");
  }
  return out;
}

BasisTable::BasisTable(std::size_t sites, std::size_t atoms)
    : sites_(sites), atoms_(atoms), dim_(0) {
  if (sites == 0) throw DomainError("basis needs at least one site");
  if (atoms > std::numeric_limits<Occupation>::max()) {
    throw CapacityError("atom number exceeds the occupation type range");
  }
  const std::size_t K = modes();
  dim_ = fock_dimension(K, atoms);
  if (dim_ > kMaxIndex / K / sizeof(Occupation)) {
    throw CapacityError("basis table of dimension " + std::to_string(dim_) +
                        " does not fit in memory addressing");
  }

  completions_.assign(K + 1, std::vector<std::size_t>(atoms + 1, 0));
  for (std::size_t m = 0; m <= K; ++m) {
    for (std::size_t s = 0; s <= atoms; ++s) completions_[m][s] = fock_dimension(m, s);
  }

  table_.resize(dim_ * K);
  std::vector<Occupation> cur(K, 0);
  std::size_t row = 0;
  // Descending lexicographic enumeration: largest leading occupation first.
  auto fill = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == K) {
      cur[pos] = static_cast<Occupation>(left);
      std::copy(cur.begin(), cur.end(), table_.begin() + static_cast<std::ptrdiff_t>(row * K));
      ++row;
      return;
    }
    for (std::size_t v = left + 1; v-- > 0;) {
      cur[pos] = static_cast<Occupation>(v);
      self(self, pos + 1, left - v);
    }
  };
  fill(fill, 0, atoms);
}

std::size_t BasisTable::completions(std::size_t modes_left, std::size_t atoms_left) const {
  return completions_[modes_left][atoms_left];
}

OccupationState BasisTable::unrank(std::size_t k) const {
  if (k >= dim_) throw NotFoundError("rank " + std::to_string(k) + " outside basis");
  auto m = modes_of(k);
  OccupationState s;
  s.occ_e.assign(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(sites_));
  s.occ_g.assign(m.begin() + static_cast<std::ptrdiff_t>(sites_), m.end());
  return s;
}

std::size_t BasisTable::rank(std::span<const Occupation> occ) const {
  const std::size_t K = modes();
  if (occ.size() != K) throw NotFoundError("state has the wrong number of modes");
  std::size_t left = atoms_;
  std::size_t index = 0;
  for (std::size_t p = 0; p + 1 < K; ++p) {
    const std::size_t x = occ[p];
    if (x > left) throw NotFoundError("state holds more atoms than the basis");
    // States sharing the prefix but with a larger value at p come first:
    // sum_{v>x} completions(K-p-1, left-v) = completions(K-p, left-x-1).
    if (left > x) index += completions(K - p, left - x - 1);
    left -= x;
  }
  if (occ[K - 1] != left) throw NotFoundError("state atom number differs from the basis");
  return index;
}

std::size_t BasisTable::rank(const OccupationState& s) const {
  if (s.occ_e.size() != sites_ || s.occ_g.size() != sites_) {
    throw NotFoundError("state has the wrong number of sites");
  }
  std::vector<Occupation> occ(s.occ_e);
  occ.insert(occ.end(), s.occ_g.begin(), s.occ_g.end());
  return rank(occ);
}

}  // namespace bhed
