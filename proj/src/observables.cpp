#include "bhed/observables.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/SVD>

#include "bhed/errors.hpp"

namespace bhed {

namespace {

void require_unit_norm(const StateVector& psi) {
  if (!psi.is_normalized(1e-8)) throw DomainError("observable needs a unit-norm state");
}

void require_site(const StateVector& psi, std::size_t site) {
  if (site >= psi.basis().sites()) throw DomainError("site index outside the chain");
}

int parity_sign(unsigned n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace

SiteOccupation site_occupation(const StateVector& psi, std::size_t site) {
  require_unit_norm(psi);
  require_site(psi, site);
  const auto& basis = psi.basis();
  SiteOccupation out;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double w = std::norm(psi[k]);
    out.n_e += w * basis.occ_e(k, site);
    out.n_g += w * basis.occ_g(k, site);
  }
  out.total = out.n_e + out.n_g;
  return out;
}

double parity(const StateVector& psi, std::size_t site) {
  require_unit_norm(psi);
  require_site(psi, site);
  double s = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    s += std::norm(psi[k]) * parity_sign(psi.basis().occ_total(k, site));
  }
  return s;
}

double parity_covariance(const StateVector& psi, std::size_t a, std::size_t b) {
  require_unit_norm(psi);
  require_site(psi, a);
  require_site(psi, b);
  const auto& basis = psi.basis();
  double sa = 0.0, sb = 0.0, sab = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double w = std::norm(psi[k]);
    const int pa = parity_sign(basis.occ_total(k, a));
    const int pb = parity_sign(basis.occ_total(k, b));
    sa += w * pa;
    sb += w * pb;
    sab += w * pa * pb;
  }
  return std::abs(sab - sa * sb);
}

double parity_correlation(const StateVector& psi, std::size_t distance) {
  const std::size_t M = psi.basis().sites();
  if (distance < 1 || distance >= M) throw DomainError("parity distance must be in [1, M-1]");
  return parity_covariance(psi, M - 1, M - 1 - distance);
}

SchmidtSpectrum schmidt_spectrum(const StateVector& psi, std::size_t cut) {
  require_unit_norm(psi);
  const auto& basis = psi.basis();
  const std::size_t M = basis.sites();
  if (cut < 1 || cut >= M) throw DomainError("cut must be in [1, M-1]");
  const std::size_t left_sites = M - cut;

  // The state is block diagonal in the number of atoms on the right.
  struct Block {
    std::map<std::vector<Occupation>, Eigen::Index> left, right;
    std::vector<std::tuple<Eigen::Index, Eigen::Index, cplx>> amps;
  };
  std::map<unsigned, Block> blocks;
  std::map<std::vector<Occupation>, int> all_left, all_right;

  std::vector<Occupation> lpat(2 * left_sites), rpat(2 * cut);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    unsigned right_atoms = 0;
    for (std::size_t i = 0; i < M; ++i) {
      const Occupation e = basis.occ_e(k, i), g = basis.occ_g(k, i);
      if (i < left_sites) {
        lpat[2 * i] = e;
        lpat[2 * i + 1] = g;
      } else {
        rpat[2 * (i - left_sites)] = e;
        rpat[2 * (i - left_sites) + 1] = g;
        right_atoms += e + g;
      }
    }
    all_left.emplace(lpat, 0);
    all_right.emplace(rpat, 0);
    if (psi[k] == cplx{}) continue;
    auto& blk = blocks[right_atoms];
    const auto li = blk.left.emplace(lpat, static_cast<Eigen::Index>(blk.left.size())).first->second;
    const auto ri = blk.right.emplace(rpat, static_cast<Eigen::Index>(blk.right.size())).first->second;
    blk.amps.emplace_back(li, ri, psi[k]);
  }

  SchmidtSpectrum out;
  out.cut = cut;
  out.left_patterns = all_left.size();
  out.right_patterns = all_right.size();
  for (const auto& [atoms, blk] : blocks) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(blk.left.size()),
                                                static_cast<Eigen::Index>(blk.right.size()));
    for (const auto& [li, ri, a] : blk.amps) c(li, ri) = a;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(c);
    for (double s : svd.singularValues()) {
      if (s >= kSchmidtFloor) out.coefficients.push_back(s);
    }
  }
  std::sort(out.coefficients.begin(), out.coefficients.end(), std::greater<>());
  return out;
}

double entanglement_entropy(const SchmidtSpectrum& spectrum) {
  double e = 0.0;
  for (double lambda : spectrum.coefficients) {
    const double p = lambda * lambda;
    if (p > 0.0) e -= p * std::log(p);
  }
  return std::max(e, 0.0);
}

double energy_gap(const EigenSolution& solution) {
  if (solution.size() < 2) throw DomainError("energy gap needs two eigenpairs");
  return std::max(0.0, solution.energies[1] - solution.energies[0]);
}

}  // namespace bhed
