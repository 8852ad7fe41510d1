#include "bhed/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "bhed/errors.hpp"

namespace bhed {

StateVector EigenSolution::state(std::shared_ptr<const BasisTable> basis, std::size_t j) const {
  if (j >= size()) throw DomainError("eigenpair index out of range");
  const auto col = vectors.col(static_cast<Eigen::Index>(j));
  return StateVector::from_real(std::move(basis),
                                std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  if (v.size() == 0) return;
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

namespace {

// Solves (T - shift) x = b in place for symmetric tridiagonal T, using LU
// with partial pivoting (second superdiagonal fill-in). Zero pivots are
// replaced by a tiny value, which is what inverse iteration wants.
void tridiagonal_shifted_solve(const std::vector<double>& diag, const std::vector<double>& off,
                               double shift, double tiny, Eigen::VectorXd& b) {
  const std::size_t m = diag.size();
  std::vector<double> d(m), dl(off), du(off), du2(m > 2 ? m - 2 : 0, 0.0);
  std::vector<bool> swapped(m, false);
  for (std::size_t i = 0; i < m; ++i) d[i] = diag[i] - shift;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double t = du[i];
      du[i] = d[i + 1];
      d[i + 1] = t - f * d[i + 1];
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      swapped[i] = true;
    }
  }
  if (d[m - 1] == 0.0) d[m - 1] = tiny;

  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    if (!swapped[i]) {
      b(ii + 1) -= dl[i] * b(ii);
    } else {
      const double t = b(ii);
      b(ii) = b(ii + 1);
      b(ii + 1) = t - dl[i] * b(ii);
    }
  }
  for (std::size_t r = m; r-- > 0;) {
    const auto ri = static_cast<Eigen::Index>(r);
    double s = b(ri);
    if (r + 1 < m) s -= du[r] * b(ri + 1);
    if (r + 2 < m) s -= du2[r] * b(ri + 2);
    b(ri) = s / d[r];
  }
}

// Eigenvectors of the Krylov tridiagonal for the given Ritz values.
Eigen::MatrixXd tridiagonal_vectors(const std::vector<double>& diag,
                                    const std::vector<double>& off,
                                    const std::vector<double>& ritz, double scale) {
  const auto m = static_cast<Eigen::Index>(diag.size());
  Eigen::MatrixXd s(m, static_cast<Eigen::Index>(ritz.size()));
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
  for (std::size_t i = 0; i < ritz.size(); ++i) {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(m);
    for (int it = 0; it < 3; ++it) {
      tridiagonal_shifted_solve(diag, off, ritz[i], tiny, x);
      for (std::size_t p = 0; p < i; ++p) {
        const auto pc = s.col(static_cast<Eigen::Index>(p));
        x -= pc.dot(x) * pc;
      }
      x.normalize();
    }
    s.col(static_cast<Eigen::Index>(i)) = x;
  }
  return s;
}

std::vector<double> tridiagonal_values(const std::vector<double>& diag,
                                       const std::vector<double>& off) {
  const auto m = static_cast<Eigen::Index>(diag.size());
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), m);
  Eigen::VectorXd e = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(off.data(), m - 1))
                            : Eigen::VectorXd(0);
  // computeFromTridiagonal does not rescale; its deflation test assumes O(1) entries
  double scale = d.cwiseAbs().maxCoeff();
  if (m > 1) scale = std::max(scale, e.cwiseAbs().maxCoeff());
  if (scale == 0.0) return std::vector<double>(diag.size(), 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(d / scale, e / scale, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("tridiagonal eigensolve failed", 0.0);
  std::vector<double> out(diag.size());
  for (Eigen::Index i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = scale * es.eigenvalues()(i);
  std::sort(out.begin(), out.end());
  return out;
}

struct RitzPair {
  double value;
  Eigen::VectorXd vector;
  double residual;
};

double residual_norm(const SparseOperator& op, const Eigen::VectorXd& v, double value,
                     Eigen::VectorXd& work) {
  apply(op, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())),
        std::span<double>(work.data(), static_cast<std::size_t>(work.size())));
  return (work - value * v).norm();
}

void orthogonalize(Eigen::VectorXd& w, const Eigen::MatrixXd& basis, Eigen::Index cols) {
  if (cols == 0) return;
  const auto b = basis.leftCols(cols);
  for (int sweep = 0; sweep < 2; ++sweep) {
    const Eigen::VectorXd h = b.transpose() * w;
    w.noalias() -= b * h;
  }
}

Eigen::VectorXd start_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  return v;
}

struct PassResult {
  std::vector<RitzPair> pairs;
  bool exhausted = false;  // complement of the locked space is empty
};

// One Lanczos run in the orthogonal complement of `locked`, returning the
// lowest `need` converged Ritz pairs (fewer if the Krylov space closes).
PassResult lanczos_pass(const SparseOperator& op, const Eigen::MatrixXd& locked,
                        Eigen::Index n_locked, std::size_t need, double tol, std::size_t cap,
                        std::uint64_t seed, double& best_residual) {
  const std::size_t n = op.dim();
  const std::size_t avail = n - static_cast<std::size_t>(n_locked);
  PassResult out;
  if (avail == 0) {
    out.exhausted = true;
    return out;
  }
  const std::size_t limit = std::min(avail, cap);
  const double scale = std::max(op.norm_bound(), std::numeric_limits<double>::min());

  Eigen::VectorXd v = start_vector(n, seed);
  orthogonalize(v, locked, n_locked);
  const double vn = v.norm();
  if (vn < 1e-8 * std::sqrt(static_cast<double>(n))) {
    out.exhausted = true;
    return out;
  }
  v /= vn;

  Eigen::Index capacity = static_cast<Eigen::Index>(std::min<std::size_t>(limit + 1, 64));
  Eigen::MatrixXd V(static_cast<Eigen::Index>(n), capacity);
  V.col(0) = v;
  std::vector<double> alpha, beta;
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  Eigen::VectorXd work(static_cast<Eigen::Index>(n));
  std::size_t next_check = 1;

  for (std::size_t j = 0;; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    {
      const auto col = V.col(jj);
      apply(op, std::span<const double>(col.data(), n), std::span<double>(w.data(), n));
    }
    const double a = V.col(jj).dot(w);
    w -= a * V.col(jj);
    if (j > 0) w -= beta[j - 1] * V.col(jj - 1);
    orthogonalize(w, V, jj + 1);
    orthogonalize(w, locked, n_locked);
    const double b = w.norm();
    alpha.push_back(a);
    const std::size_t m = j + 1;

    const bool breakdown = b <= 1e-13 * scale;
    const bool full = m == limit;
    if (breakdown || full || m >= next_check) {
      next_check = m + (m < 16 ? 1 : 4);
      const std::vector<double> ritz_all = tridiagonal_values(alpha, beta);
      const std::size_t want = std::min(need, m);
      std::vector<double> ritz(ritz_all.begin(), ritz_all.begin() + static_cast<std::ptrdiff_t>(want));
      const Eigen::MatrixXd s = tridiagonal_vectors(alpha, beta, ritz, scale);
      bool converged = true;
      for (std::size_t i = 0; i < want; ++i) {
        const double r = breakdown ? 0.0 : b * std::abs(s(static_cast<Eigen::Index>(m - 1),
                                                          static_cast<Eigen::Index>(i)));
        if (i == 0) best_residual = std::min(best_residual, r);
        if (r > 0.5 * tol) converged = false;
      }
      if (converged || breakdown || full) {
        const auto Vm = V.leftCols(static_cast<Eigen::Index>(m));
        bool accurate = true;
        std::vector<RitzPair> pairs;
        for (std::size_t i = 0; i < want; ++i) {
          Eigen::VectorXd y = Vm * s.col(static_cast<Eigen::Index>(i));
          y.normalize();
          const double r = residual_norm(op, y, ritz[i], work);
          if (r > tol) accurate = false;
          pairs.push_back({ritz[i], std::move(y), r});
        }
        if (accurate || breakdown || full) {
          if (!accurate && full && limit < avail) {
            double worst = 0.0;
            for (const auto& p : pairs) worst = std::max(worst, p.residual);
            throw ConvergenceError("Lanczos hit the iteration cap of " + std::to_string(cap) +
                                       " with residual " + std::to_string(worst),
                                   worst);
          }
          out.pairs = std::move(pairs);
          return out;
        }
      }
    }

    if (static_cast<Eigen::Index>(m) >= capacity) {
      capacity = std::min<Eigen::Index>(2 * capacity, static_cast<Eigen::Index>(limit + 1));
      V.conservativeResize(Eigen::NoChange, capacity);
    }
    beta.push_back(b);
    V.col(jj + 1) = w / b;
  }
}

}  // namespace

EigenSolution lowest_eigenpairs(const SparseOperator& op, std::size_t k, double tol,
                                const LanczosOptions& options) {
  const std::size_t n = op.dim();
  if (k == 0 || k > n) {
    throw DomainError("requested " + std::to_string(k) + " eigenpairs of a dimension-" +
                      std::to_string(n) + " operator");
  }
  if (!(tol > 0.0)) throw DomainError("eigensolver tolerance must be positive");
  const std::size_t target = std::min(n, k + options.extra_pairs);
  const std::size_t cap = options.max_iterations == 0 ? n : options.max_iterations;

  Eigen::MatrixXd locked(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(target));
  Eigen::Index n_locked = 0;
  std::vector<RitzPair> found;
  double best_residual = std::numeric_limits<double>::infinity();

  for (std::uint64_t pass = 0;; ++pass) {
    const std::size_t need = found.size() < target ? target - found.size() : 1;
    if (found.size() >= target && !options.verify_degeneracy) break;
    PassResult res = lanczos_pass(op, locked, n_locked, need, tol, cap,
                                  options.seed + 0x9e3779b97f4a7c15ULL * pass, best_residual);
    if (res.exhausted || res.pairs.empty()) break;
    if (found.size() >= target) {
      std::vector<double> values;
      for (const auto& p : found) values.push_back(p.value);
      std::sort(values.begin(), values.end());
      const double threshold = values[target - 1];
      const double slack = tol + 1e-12 * std::max(1.0, std::abs(threshold));
      if (res.pairs.front().value >= threshold - slack) break;
    }
    for (auto& p : res.pairs) {
      if (n_locked == locked.cols()) {
        locked.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(
                                                       2 * locked.cols() + 1,
                                                       static_cast<Eigen::Index>(n)));
      }
      locked.col(n_locked++) = p.vector;
      found.push_back(std::move(p));
    }
  }

  if (found.size() < k) {
    throw ConvergenceError("Lanczos found only " + std::to_string(found.size()) + " of " +
                               std::to_string(k) + " eigenpairs",
                           best_residual);
  }
  std::sort(found.begin(), found.end(),
            [](const RitzPair& a, const RitzPair& b) { return a.value < b.value; });

  EigenSolution sol;
  sol.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    sol.energies.push_back(found[j].value);
    sol.residuals.push_back(found[j].residual);
    sol.vectors.col(static_cast<Eigen::Index>(j)) = found[j].vector;
    fix_sign(sol.vectors.col(static_cast<Eigen::Index>(j)));
  }
  return sol;
}

EigenSolution ground_state(const SparseOperator& op, const SparseOperator* tie_breaker,
                           double tol, const LanczosOptions& options, double degeneracy_tol) {
  const std::size_t n = op.dim();
  std::size_t k = std::min<std::size_t>(2, n);
  EigenSolution sol;
  std::size_t cluster = 1;
  for (;;) {
    sol = lowest_eigenpairs(op, k, tol, options);
    const double e0 = sol.energies.front();
    const double window = degeneracy_tol * std::max(1.0, std::abs(e0));
    cluster = 1;
    while (cluster < sol.size() && sol.energies[cluster] - e0 <= window) ++cluster;
    if (cluster < sol.size() || k == n) break;
    k = std::min(n, 2 * k);
  }
  if (cluster == 1 || tie_breaker == nullptr) return sol;
  if (tie_breaker->dim() != n) throw DimensionError("tie breaker dimension differs");

  const auto c = static_cast<Eigen::Index>(cluster);
  const Eigen::MatrixXd Y = sol.vectors.leftCols(c);
  Eigen::MatrixXd BY(Y.rows(), c);
  for (Eigen::Index j = 0; j < c; ++j) {
    apply(*tie_breaker, std::span<const double>(Y.col(j).data(), n),
          std::span<double>(BY.col(j).data(), n));
  }
  const Eigen::MatrixXd projected = Y.transpose() * BY;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (projected + projected.transpose()));
  sol.vectors.leftCols(c) = Y * es.eigenvectors();
  for (Eigen::Index j = 0; j < c; ++j) {
    sol.vectors.col(j).normalize();
    fix_sign(sol.vectors.col(j));
  }
  return sol;
}

DenseSpectrum dense_oracle(const SparseOperator& op, std::size_t max_dim) {
  if (op.dim() > max_dim) {
    throw CapacityError("dense oracle limited to dimension " + std::to_string(max_dim) +
                        ", got " + std::to_string(op.dim()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.to_dense());
  DenseSpectrum out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index j = 0; j < out.vectors.cols(); ++j) fix_sign(out.vectors.col(j));
  return out;
}

}  // namespace bhed
