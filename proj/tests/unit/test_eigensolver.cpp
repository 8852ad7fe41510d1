#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <random>

#include "bhed/analytic.hpp"
#include "bhed/errors.hpp"
#include "bhed/eigensolver.hpp"
#include "bhed/hamiltonian.hpp"

using namespace bhed;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

void check_solution(const SparseOperator& h, const EigenSolution& sol, double tol) {
  for (std::size_t j = 0; j + 1 < sol.size(); ++j) CHECK(sol.energies[j] <= sol.energies[j + 1]);
  Eigen::MatrixXd gram = sol.vectors.transpose() * sol.vectors;
  CHECK((gram - Eigen::MatrixXd::Identity(sol.size(), sol.size())).cwiseAbs().maxCoeff() <
        10 * tol);
  Eigen::MatrixXd dense = h.to_dense();
  for (std::size_t j = 0; j < sol.size(); ++j) {
    Eigen::VectorXd v = sol.vectors.col(j);
    double r = (dense * v - sol.energies[j] * v).norm();
    CHECK(r <= tol);
    CHECK(sol.residuals[j] <= tol);
    Eigen::Index big;
    v.cwiseAbs().maxCoeff(&big);
    CHECK(v(big) > 0.0);
  }
}

}  // namespace

TEST_CASE("two-level drive") {
  BasisTable b(1, 1);
  auto h = build_hamiltonian(ModelParams::uniform(1, 1.0, 0.0, 0.0, 0.0, 5.0), b);
  auto sol = lowest_eigenpairs(h, 2);
  REQUIRE(sol.size() == 2);
  CHECK(sol.energies[0] == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(sol.energies[1] == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("Lanczos agrees with dense diagonalisation") {
  SUBCASE("three sites, three atoms, no drive: full spectrum") {
    BasisTable b(3, 3);
    auto h = build_hamiltonian(ModelParams::uniform(3, 1.0, 20.0), b);
    auto dense = dense_oracle(h);
    auto sol = lowest_eigenpairs(h, b.dimension());
    REQUIRE(sol.size() == b.dimension());
    for (std::size_t j = 0; j < sol.size(); ++j) {
      CHECK(rel(sol.energies[j], dense.energies(j)) < 1e-10);
    }
    check_solution(h, sol, 1e-10);
  }
  SUBCASE("driven chains, a few low pairs") {
    for (std::size_t n = 2; n <= 4; ++n) {
      BasisTable b(n, n);
      for (double omega : {0.0, 13.0, 41.0}) {
        auto p = ModelParams::uniform(n, 1.0, 20.0, 0.0, 0.0, omega);
        auto h = build_hamiltonian(p, b);
        auto dense = dense_oracle(h);
        auto sol = lowest_eigenpairs(h, 6);
        for (std::size_t j = 0; j < 6; ++j) {
          CHECK(rel(sol.energies[j], dense.energies(j)) < 1e-10);
        }
        check_solution(h, sol, 1e-10);
      }
    }
  }
}

TEST_CASE("exactly degenerate ground level is found in full") {
  // without drive the SU(2) symmetric chain has an (N+1)-fold ground level
  BasisTable b(3, 3);
  auto h = build_hamiltonian(ModelParams::uniform(3, 1.0, 20.0), b);
  auto dense = dense_oracle(h);
  auto sol = lowest_eigenpairs(h, 6);
  for (std::size_t j = 0; j < 6; ++j) CHECK(rel(sol.energies[j], dense.energies(j)) < 1e-10);
  CHECK(std::abs(sol.energies[3] - sol.energies[0]) < 1e-9);
}

TEST_CASE("tie-breaker selects the limit of a small positive drive") {
  BasisTable b(3, 3);
  auto h = build_hamiltonian(ModelParams::uniform(3, 1.0, 20.0), b);
  auto drive = build_drive_operator(b, 2);
  auto gs = ground_state(h, &drive);
  auto nudged = lowest_eigenpairs(
      build_hamiltonian(ModelParams::uniform(3, 1.0, 20.0, 0.0, 0.0, 1e-6), b), 1);
  double overlap = std::abs(gs.vectors.col(0).dot(nudged.vectors.col(0)));
  CHECK(overlap == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(gs.size() >= 2);
}

TEST_CASE("trace identity and zero operator") {
  BasisTable b(3, 2);
  auto p = ModelParams::uniform(3, 0.7, 3.0, 1.1, 0.4, 2.0);
  auto h = build_hamiltonian(p, b);
  auto d = dense_oracle(h);
  CHECK(std::abs(d.energies.sum() - h.trace()) < 1e-10 * std::abs(h.trace()));

  auto z = dense_oracle(SparseOperator(10));
  CHECK(z.energies.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(dense_oracle(SparseOperator(20), 10), CapacityError);
}

TEST_CASE("variational bound over random states") {
  BasisTable b(4, 4);
  auto h = build_hamiltonian(ModelParams::uniform(4, 1.0, 20.0, 0.0, 0.0, 30.0), b);
  auto e0 = lowest_eigenpairs(h, 1).energies[0];
  Eigen::MatrixXd dense = h.to_dense();
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd v(b.dimension());
    for (auto& x : v) x = g(rng);
    v.normalize();
    CHECK(e0 <= v.dot(dense * v));
  }
}

TEST_CASE("determinism for a fixed seed") {
  BasisTable b(4, 3);
  auto h = build_hamiltonian(ModelParams::uniform(4, 1.0, 20.0, 0.0, 0.0, 25.0), b);
  auto a = lowest_eigenpairs(h, 3);
  auto c = lowest_eigenpairs(h, 3);
  CHECK(a.energies == c.energies);
  CHECK(a.vectors == c.vectors);
}

TEST_CASE("iteration cap raises a convergence error") {
  BasisTable b(4, 4);
  auto h = build_hamiltonian(ModelParams::uniform(4, 1.0, 20.0, 0.0, 0.0, 30.0), b);
  LanczosOptions opts;
  opts.max_iterations = 4;
  try {
    lowest_eigenpairs(h, 1, 1e-12, opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best_residual() > 1e-12);
    CHECK(std::isfinite(e.best_residual()));
  }
}

TEST_CASE("argument checks") {
  BasisTable b(2, 1);
  auto h = build_hamiltonian(ModelParams::uniform(2, 1.0, 0.0), b);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 0), DomainError);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 5), DomainError);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 1, 0.0), DomainError);
}

TEST_CASE("hopping-free ground energy crosses between localized branches") {
  // two atoms: one on the driven site and one parked elsewhere, against both
  // on the driven site
  const double u = 20.0, delta = 10.0;
  BasisTable b(3, 2);
  double star = omega_star(1, u, delta);
  for (double omega : {star - 0.5, star + 0.5}) {
    auto p = ModelParams::uniform(3, 0.0, u, delta, 0.0, omega);
    auto e = lowest_eigenpairs(build_hamiltonian(p, b), 1).energies[0];
    double expected = ground_energy_hopping_free(2, u, delta, omega);
    CHECK(e == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(star == doctest::Approx(24.494897427831781).epsilon(1e-14));
}
