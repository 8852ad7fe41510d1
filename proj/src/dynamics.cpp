#include "bhed/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "bhed/eigensolver.hpp"
#include "bhed/errors.hpp"
#include "bhed/observables.hpp"

namespace bhed {

void RampSchedule::validate() const {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("ramp rate must be >= 0");
  if (!(t_final > 0.0)) throw DomainError("ramp end time must be positive");
  if (!(dt_max > 0.0)) throw DomainError("maximum time step must be positive");
  if (!(sample_interval > 0.0)) throw DomainError("sample interval must be positive");
}

std::string Probe::name() const {
  const std::string s = std::to_string(site + 1);
  switch (kind) {
    case Kind::occupation_total: return "n_" + s;
    case Kind::occupation_e: return "ne_" + s;
    case Kind::occupation_g: return "ng_" + s;
    case Kind::energy: return "energy";
    case Kind::norm: return "norm";
    case Kind::drive: return "omega";
  }
  return "?";
}

namespace {

// H(t) = H_static + omega * H_drive, applied without assembling the sum.
struct RampedHamiltonian {
  const SparseOperator& fixed;
  const SparseOperator& drive;
  double omega;

  void apply(std::span<const cplx> x, std::span<cplx> y) const {
    bhed::apply(fixed, x, y);
    if (omega != 0.0) apply_add(drive, omega, x, y);
  }
};

using CVec = Eigen::VectorXcd;

// psi <- exp(-i H dt) psi by a Lanczos (Krylov) projection. Returns false if
// the error estimate is still above tol at the maximum Krylov dimension.
bool krylov_step(const RampedHamiltonian& h, double dt, std::size_t max_dim, double tol,
                 CVec& psi) {
  const auto n = psi.size();
  const double nrm = psi.norm();
  if (nrm == 0.0) return true;
  const auto mmax = static_cast<Eigen::Index>(std::min<std::size_t>(max_dim, static_cast<std::size_t>(n)));
  Eigen::MatrixXcd V(n, mmax);
  V.col(0) = psi / nrm;
  std::vector<double> alpha, beta;
  CVec w(n);
  Eigen::VectorXcd coeff;

  for (Eigen::Index j = 0; j < mmax; ++j) {
    h.apply(std::span<const cplx>(V.col(j).data(), static_cast<std::size_t>(n)),
            std::span<cplx>(w.data(), static_cast<std::size_t>(n)));
    const double a = V.col(j).dot(w).real();
    w -= a * V.col(j);
    if (j > 0) w -= beta.back() * V.col(j - 1);
    for (int sweep = 0; sweep < 2; ++sweep) {
      const CVec proj = V.leftCols(j + 1).adjoint() * w;
      w.noalias() -= V.leftCols(j + 1) * proj;
    }
    alpha.push_back(a);
    const double b = w.norm();

    const Eigen::Index m = j + 1;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      T(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::MatrixXd& Q = es.eigenvectors();
    Eigen::VectorXcd phase(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      phase(i) = std::exp(cplx(0.0, -es.eigenvalues()(i) * dt)) * Q(0, i);
    }
    coeff = Q * phase;
    const double err = b * std::abs(coeff(m - 1)) * nrm;
    const bool breakdown = b <= 1e-14 * std::max(1.0, std::abs(a));
    if (err <= tol || breakdown || m == n) {
      psi = nrm * (V.leftCols(m) * coeff);
      return true;
    }
    if (m == mmax) return false;
    beta.push_back(b);
    V.col(m) = w / b;
  }
  return false;
}

double sample(const Probe& p, const StateVector& psi, const RampedHamiltonian& h) {
  switch (p.kind) {
    case Probe::Kind::occupation_total: return site_occupation(psi, p.site).total;
    case Probe::Kind::occupation_e: return site_occupation(psi, p.site).n_e;
    case Probe::Kind::occupation_g: return site_occupation(psi, p.site).n_g;
    case Probe::Kind::norm: return psi.norm();
    case Probe::Kind::drive: break;  // filled in by the caller
    case Probe::Kind::energy: {
      StateVector hpsi(psi.basis_ptr());
      h.apply(psi.amplitudes(), hpsi.amplitudes());
      return psi.inner(hpsi).real();
    }
  }
  return 0.0;
}

}  // namespace

TimeSeries evolve(const ModelParams& params, std::shared_ptr<const BasisTable> basis,
                  const RampSchedule& ramp, const StateVector& psi0,
                  const std::vector<Probe>& probes, Boundary boundary,
                  const PropagatorOptions& options) {
  ramp.validate();
  if (psi0.size() != basis->dimension()) throw DimensionError("initial state dimension differs");
  if (!psi0.is_normalized(1e-8)) throw DomainError("initial state must be unit norm");
  for (const auto& p : probes) {
    if (p.site >= basis->sites()) throw DomainError("probe site outside the chain");
  }

  const SparseOperator fixed = build_hamiltonian(params, *basis, boundary);
  const SparseOperator drive = build_drive_operator(*basis, basis->sites() - 1);
  const double fixed_norm = fixed.norm_bound();
  const double drive_norm = drive.norm_bound();
  const double omega0 = params.drive.back();
  // the static part already carries omega0; only the ramp increment is added
  auto ramp_at = [&](double t) { return ramp.rate * t; };

  TimeSeries out{{}, {}, {}, psi0};
  for (const auto& p : probes) out.names.push_back(p.name());

  StateVector state = psi0;
  CVec psi = Eigen::Map<const CVec>(psi0.amplitudes().data(), static_cast<Eigen::Index>(psi0.size()));

  auto record = [&](double t) {
    std::copy(psi.begin(), psi.end(), state.amplitudes().begin());
    const RampedHamiltonian h{fixed, drive, ramp_at(t)};
    std::vector<double> row;
    for (const auto& p : probes) {
      row.push_back(p.kind == Probe::Kind::drive ? omega0 + ramp_at(t) : sample(p, state, h));
    }
    out.times.push_back(t);
    out.rows.push_back(std::move(row));
  };

  double t = 0.0;
  std::size_t sample_index = 0;
  record(t);
  const double eps_t = 1e-12 * std::max(1.0, ramp.t_final);
  while (t < ramp.t_final - eps_t) {
    const double next_sample =
        std::min(ramp.t_final, static_cast<double>(sample_index + 1) * ramp.sample_interval);
    double h_norm =
        fixed_norm + std::abs(ramp_at(std::min(t + ramp.dt_max, ramp.t_final))) * drive_norm;
    double dt = ramp.dt_max;
    if (h_norm > 0.0) dt = std::min(dt, options.norm_step_budget / h_norm);
    bool lands = false;
    if (t + dt >= next_sample - eps_t) {
      dt = next_sample - t;
      lands = true;
    }

    for (;;) {
      const RampedHamiltonian h{fixed, drive, ramp_at(t + 0.5 * dt)};
      CVec trial = psi;
      if (krylov_step(h, dt, options.krylov_dim, options.krylov_tol, trial)) {
        psi = std::move(trial);
        break;
      }
      dt *= 0.5;
      lands = false;
      if (dt < options.dt_min) {
        throw PropagationError("time step fell below " + std::to_string(options.dt_min) +
                               " at t = " + std::to_string(t));
      }
    }

    if (lands) {
      t = next_sample;
      ++sample_index;
      record(t);
    } else {
      t += dt;
    }
  }
  std::copy(psi.begin(), psi.end(), state.amplitudes().begin());
  out.final_state = state;
  return out;
}

StateVector ramp_initial_state(const ModelParams& params, std::shared_ptr<const BasisTable> basis,
                               Boundary boundary) {
  const SparseOperator h = build_hamiltonian(params, *basis, boundary);
  const SparseOperator drive = build_drive_operator(*basis, basis->sites() - 1);
  const EigenSolution sol = ground_state(h, &drive);
  return sol.state(std::move(basis), 0);
}

}  // namespace bhed
