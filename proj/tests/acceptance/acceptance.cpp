// End-to-end checks of the physics the simulator is meant to reproduce.
// Prints one PASS/FAIL line per check and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bhed/analytic.hpp"
#include "bhed/dynamics.hpp"
#include "bhed/eigensolver.hpp"
#include "bhed/errors.hpp"
#include "bhed/hamiltonian.hpp"
#include "bhed/observables.hpp"
#include "bhed/serial_kernels.hpp"

using namespace bhed;

namespace {

using BasisPtr = std::shared_ptr<const BasisTable>;

constexpr double kU = 20.0;

struct Point {
  double omega = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double n_end = 0.0;
  std::vector<double> corr;     // corr[d-1] = C(d)
  std::vector<double> entropy;  // entropy[l-1] = E for cut l
};

// Ground-state observables of the N=M chain along a drive grid.
std::vector<Point> ground_sweep(const BasisPtr& basis, double trap, const std::vector<double>& grid,
                                bool full = true) {
  const std::size_t m = basis->sites();
  const SparseOperator drive = build_drive_operator(*basis, m - 1);
  std::vector<Point> out(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
    Point& p = out[static_cast<std::size_t>(i)];
    p.omega = grid[static_cast<std::size_t>(i)];
    const auto params = ModelParams::uniform(m, 1.0, kU, 0.0, trap, p.omega);
    const auto sol = ground_state(build_hamiltonian(params, *basis), &drive);
    const StateVector psi = sol.state(basis, 0);
    p.energy = sol.energies[0];
    p.gap = energy_gap(sol);
    p.n_end = site_occupation(psi, m - 1).total;
    if (!full) continue;
    for (std::size_t d = 1; d < m; ++d) {
      p.corr.push_back(parity_correlation(psi, d));
      p.entropy.push_back(entanglement_entropy(schmidt_spectrum(psi, d)));
    }
  }
  return out;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

const Point& at(const std::vector<Point>& s, double omega) {
  return *std::min_element(s.begin(), s.end(), [&](const Point& a, const Point& b) {
    return std::abs(a.omega - omega) < std::abs(b.omega - omega);
  });
}

// Drive at which n_end first rises through `level` (linear interpolation), or NaN.
double crossing(const std::vector<Point>& s, double level) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1].n_end < level && s[i].n_end >= level) {
      const double f = (level - s[i - 1].n_end) / (s[i].n_end - s[i - 1].n_end);
      return s[i - 1].omega + f * (s[i].omega - s[i - 1].omega);
    }
  }
  return std::nan("");
}

// Grid index of the largest interior local maximum of f inside [lo, hi], or -1.
long peak_in(const std::vector<Point>& s, const std::function<double(const Point&)>& f, double lo,
             double hi) {
  long best = -1;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (s[i].omega < lo - 1e-9 || s[i].omega > hi + 1e-9) continue;
    const double v = f(s[i]);
    if (v >= f(s[i - 1]) && v >= f(s[i + 1]) && (best < 0 || v > f(s[std::size_t(best)]))) {
      best = static_cast<long>(i);
    }
  }
  return best;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Staircase checks shared by the trap-free and trapped chains.
struct Staircase {
  std::vector<double> mids;
  bool monotone = true;
  double worst_dip = 0.0;
};

Staircase staircase(const std::vector<Point>& s) {
  Staircase st;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double dip = s[i - 1].n_end - s[i].n_end;
    if (dip > 1e-8) st.monotone = false;
    st.worst_dip = std::max(st.worst_dip, dip);
  }
  for (int n = 1; n <= 4; ++n) st.mids.push_back(crossing(s, n + 0.5));
  return st;
}

void check_staircase(const std::vector<Point>& s) {
  const Staircase st = staircase(s);
  bool ok = st.monotone;
  std::string d = "steps at";
  for (int n = 1; n <= 4; ++n) {
    const double mid = st.mids[std::size_t(n - 1)];
    ok = ok && std::abs(mid - omega_star(unsigned(n), kU, 0.0)) <= 2.0;
    d += fmt(" %.2f", mid);
  }
  d += "; plateaus";
  for (int n = 1; n <= 4; ++n) {
    const double v = at(s, 20.0 * n - 10.0).n_end;
    ok = ok && std::abs(v - n) <= 0.15;
    d += fmt(" %.3f", v);
  }
  double low = 1e9;
  for (const auto& p : s) {
    if (p.omega >= 90.0) low = std::min(low, p.n_end);
  }
  ok = ok && low >= 4.8;
  d += fmt("; min n_5 above 90J %.3f", low);
  if (!st.monotone) d += fmt("; largest dip %.2e", st.worst_dip);
  report(ok, "staircase thresholds", d);
}

void check_trap(const BasisPtr& basis) {
  bool ok = true;
  std::string d;
  for (double eps : {1.0, 2.0}) {
    const auto s = ground_sweep(basis, eps, make_grid(0.0, 100.0, 0.5), false);
    const Staircase st = staircase(s);
    bool steps = st.monotone;
    for (std::size_t n = 0; n < 4; ++n) {
      steps = steps && std::isfinite(st.mids[n]) && (n == 0 || st.mids[n] > st.mids[n - 1]);
    }
    const double top = s.back().n_end;
    ok = ok && steps && top >= 4.8;
    d += fmt(d.empty() ? "eps=%gJ: steps at" : "; eps=%gJ: steps at", eps);
    for (double m : st.mids) d += fmt(" %.2f", m);
    d += fmt(", n_5(100J)=%.3f", top);
  }
  report(ok, "trap robustness", d);
}

void check_parity(const std::vector<Point>& s) {
  bool ok = true;
  std::string d = "peaks at";
  for (int n = 1; n <= 4; ++n) {
    const double star = omega_star(unsigned(n), kU, 0.0);
    const long i = peak_in(s, [](const Point& p) { return p.corr[0]; }, star - 2.0, star + 2.0);
    if (i < 0) {
      ok = false;
      d += " none";
      continue;
    }
    const auto& c = s[std::size_t(i)].corr;
    const bool ordered = c[0] >= c[1] && c[1] >= c[2] && c[2] >= c[3];
    ok = ok && ordered;
    d += fmt(" %.2f", s[std::size_t(i)].omega) + fmt("(C1..4 %.3f", c[0]) + fmt(" %.3f", c[1]) +
         fmt(" %.3f", c[2]) + fmt(" %.3f)", c[3]) + (ordered ? "" : "!");
  }
  double worst = 0.0;
  d += "; max C(d) at plateau midpoints";
  for (int n = 1; n <= 4; ++n) {
    const auto& c = at(s, 20.0 * n - 10.0).corr;
    const double top = *std::max_element(c.begin(), c.end());
    worst = std::max(worst, top);
    d += fmt(" %.4f", top);
  }
  ok = ok && worst < 0.05;
  report(ok, "parity correlation peaks", d);
}

void check_entropy(const std::vector<Point>& s, const BasisPtr& basis) {
  bool ok = true;
  std::string d = "l=1 peaks at";
  for (int n = 1; n <= 4; ++n) {
    const double star = omega_star(unsigned(n), kU, 0.0);
    const long i = peak_in(s, [](const Point& p) { return p.entropy[0]; }, star - 2.0, star + 2.0);
    ok = ok && i >= 0;
    d += i < 0 ? std::string(" none") : fmt(" %.2f", s[std::size_t(i)].omega);
  }
  const double far = ground_sweep(basis, 0.0, {110.0}).front().entropy[0];
  ok = ok && far < 0.05;
  d += fmt("; E(110J)=%.4f", far);
  const double base = s.front().entropy[2];
  double lowest = 1e9;
  for (const auto& p : s) {
    if (p.omega >= 22.0 && p.omega <= 78.0) lowest = std::min(lowest, p.entropy[2]);
  }
  ok = ok && lowest > base;
  d += fmt("; l=3: E(0)=%.4f", base) + fmt(", min on plateaus %.4f", lowest);
  report(ok, "entropy peaks", d);
}

void check_gap() {
  std::vector<double> gaps;
  for (std::size_t n = 2; n <= 5; ++n) {
    auto b = std::make_shared<const BasisTable>(n, n);
    gaps.push_back(ground_sweep(b, 0.0, {30.0}, false).front().gap);
  }
  bool ok = true;
  std::string d = "ln gap(N=2..5)";
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    d += fmt(" %.3f", std::log(gaps[i]));
    if (i > 0) ok = ok && gaps[i] < gaps[i - 1] && std::log(gaps[i - 1]) - std::log(gaps[i]) >= 1.0;
  }
  report(ok, "gap scaling", d);
}

double ramp_terminal(const BasisPtr& basis, double rate, double t_final, double dt_max,
                     double* worst_norm = nullptr) {
  const auto params = ModelParams::uniform(basis->sites(), 1.0, kU);
  RampSchedule ramp;
  ramp.rate = rate;
  ramp.t_final = t_final;
  ramp.dt_max = dt_max;
  ramp.sample_interval = 1.0;
  const auto ts = evolve(params, basis, ramp, ramp_initial_state(params, basis),
                         {{Probe::Kind::occupation_total, basis->sites() - 1}, {Probe::Kind::norm}});
  if (worst_norm) {
    for (const auto& row : ts.rows) *worst_norm = std::max(*worst_norm, std::abs(row[1] - 1.0));
  }
  return ts.rows.back()[0];
}

void check_ramp() {
  auto b = std::make_shared<const BasisTable>(3, 3);
  std::vector<double> ends;
  for (double v : {1.0, 2.0, 3.0}) ends.push_back(ramp_terminal(b, v, 70.0, 0.01));
  const bool ok = ends[0] > 2.5 && ends[1] <= ends[0] && ends[2] <= ends[1];
  report(ok, "ramp dynamics",
         fmt("n_3(Jt=70) for v=J,2J,3J: %.4f", ends[0]) + fmt(" %.4f", ends[1]) +
             fmt(" %.4f", ends[2]));
}

void check_hopping_free(const BasisPtr& basis) {
  bool ok = true;
  std::string d;
  for (double delta : {0.0, 10.0}) {
    const auto grid = make_grid(1.0, 99.0, 2.0);  // 50 points, none on a threshold
    double worst = 0.0;
    std::vector<double> n_end;
    for (double w : grid) {
      const auto p = ModelParams::uniform(5, 0.0, kU, delta, 0.0, w);
      const auto sol = lowest_eigenpairs(build_hamiltonian(p, *basis), 1);
      worst = std::max(worst, std::abs(sol.energies[0] - ground_energy_hopping_free(5, kU, delta, w)));
      n_end.push_back(site_occupation(sol.state(basis, 0), 4).total);
    }
    ok = ok && worst <= 1e-10;
    // every jump n -> n+1 must bracket the matching threshold to within a step
    std::size_t jumps = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const long from = std::lround(n_end[i - 1]), to = std::lround(n_end[i]);
      if (to == from) continue;
      ++jumps;
      const bool single = to == from + 1 && from >= 1;
      const double star = single ? omega_star(unsigned(from), kU, delta) : std::nan("");
      ok = ok && single && star >= grid[i - 1] - 2.0 && star <= grid[i] + 2.0;
    }
    ok = ok && jumps == 4;
    d += fmt(d.empty() ? "delta=%g: " : "; delta=%g: ", delta) +
         fmt("max |E - E_G| %.1e", worst) + fmt(", %.0f jumps", double(jumps));
  }
  report(ok, "hopping-free oracle", d);
}

void check_solver() {
  bool ok = true;
  double worst_rel = 0.0, worst_res = 0.0;
  for (std::size_t n = 2; n <= 5; ++n) {
    BasisTable b(n, n);
    for (double w : {0.0, 15.0, 30.0, 55.0, 90.0}) {
      const auto h = build_hamiltonian(ModelParams::uniform(n, 1.0, kU, 0.0, 0.0, w), b);
      const std::size_t k = std::min<std::size_t>(5, b.dimension());
      const auto sol = lowest_eigenpairs(h, k);
      const auto dense = dense_oracle(h);
      const Eigen::MatrixXd hd = h.to_dense();
      for (std::size_t j = 0; j < k; ++j) {
        const double ref = dense.energies(Eigen::Index(j));
        // energies are in units of J; an exactly zero level (N=2, no drive)
        // is compared on that scale instead of relative to itself
        worst_rel = std::max(worst_rel,
                             std::abs(sol.energies[j] - ref) / std::max(1.0, std::abs(ref)));
        const Eigen::VectorXd v = sol.vectors.col(Eigen::Index(j));
        worst_res = std::max(worst_res, (hd * v - sol.energies[j] * v).norm());
      }
    }
  }
  ok = worst_rel <= 1e-10 && worst_res <= 1e-8;
  report(ok, "solver vs dense oracle",
         fmt("max relative eigenvalue error %.1e", worst_rel) + fmt(", max residual %.1e", worst_res));
}

void check_properties(const BasisPtr& basis5) {
  std::vector<std::string> broken;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;

  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t n = 0; n <= 4; ++n) {
      BasisTable b(m, n);
      for (std::size_t k = 0; k < b.dimension(); ++k) {
        if (b.rank(b.unrank(k)) != k) {
          broken.push_back("bijection");
          goto basis_done;
        }
      }
    }
  }
basis_done:

  for (std::size_t m = 1; m <= 4; ++m) {
    for (std::size_t n = 1; n <= 4; ++n) {
      BasisTable b(m, n);
      ModelParams p = ModelParams::uniform(m, g(rng), std::abs(g(rng)), g(rng), 0.3, g(rng));
      p.drive[0] = g(rng);
      try {
        const auto h = build_hamiltonian(p, b, Boundary::periodic);
        const auto r = serial::build_hamiltonian(p, b, Boundary::periodic);
        if (!h.is_symmetric(0.0) || (h.to_dense() - r.to_dense()).cwiseAbs().maxCoeff() > 1e-13) {
          broken.push_back("hermiticity");
        }
      } catch (const NotFoundError&) {
        broken.push_back("number conservation");
      }
    }
  }

  double worst_norm = 0.0, worst_sym = 0.0;
  for (double w : {0.0, 19.5, 30.0, 61.0}) {
    const auto psi = ground_state(build_hamiltonian(ModelParams::uniform(5, 1.0, kU, 0.0, 0.0, w),
                                                    *basis5),
                                  nullptr)
                         .state(basis5, 0);
    // mirror image: cut l of psi and cut M-l of the mirror split the chain identically
    StateVector mirror(basis5);
    for (std::size_t k = 0; k < basis5->dimension(); ++k) {
      auto st = basis5->unrank(k);
      std::reverse(st.occ_e.begin(), st.occ_e.end());
      std::reverse(st.occ_g.begin(), st.occ_g.end());
      mirror.amplitudes()[basis5->rank(st)] = psi[k];
    }
    for (std::size_t l = 1; l < 5; ++l) {
      const auto spec = schmidt_spectrum(psi, l);
      double sum = 0.0;
      for (double c : spec.coefficients) sum += c * c;
      worst_norm = std::max(worst_norm, std::abs(sum - 1.0));
      const double e1 = entanglement_entropy(spec);
      const double e2 = entanglement_entropy(schmidt_spectrum(mirror, 5 - l));
      worst_sym = std::max(worst_sym, std::abs(e1 - e2));
    }
  }
  if (worst_norm > 1e-10) broken.push_back("schmidt normalisation");
  if (worst_sym > 1e-9) broken.push_back("entropy complement symmetry");

  for (std::size_t k = 0; k < basis5->dimension(); k += 7) {
    const auto psi = StateVector::basis_state(basis5, k);
    for (std::size_t d = 1; d < 5; ++d) {
      if (parity_correlation(psi, d) != 0.0) {
        broken.push_back("product-state C(d)");
        k = basis5->dimension();
        break;
      }
    }
  }

  auto b3 = std::make_shared<const BasisTable>(3, 3);
  double norm_drift = 0.0;
  const double coarse = ramp_terminal(b3, 1.0, 30.0, 0.004, &norm_drift);
  const double fine = ramp_terminal(b3, 1.0, 30.0, 0.002, &norm_drift);
  if (norm_drift > 1e-8) broken.push_back("norm conservation");
  if (std::abs(coarse - fine) >= 1e-6) broken.push_back("step halving");

  std::string d = fmt("schmidt norm err %.1e", worst_norm) + fmt(", entropy asym %.1e", worst_sym) +
                  fmt(", norm drift %.1e", norm_drift) +
                  fmt(", step-halving diff %.1e", std::abs(coarse - fine));
  for (const auto& b : broken) d += "; broken: " + b;
  report(broken.empty(), "property suites", d);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  auto basis5 = std::make_shared<const BasisTable>(5, 5);
  const auto sweep = ground_sweep(basis5, 0.0, make_grid(0.0, 100.0, 0.25));

  check_staircase(sweep);
  check_trap(basis5);
  check_parity(sweep);
  check_entropy(sweep, basis5);
  check_gap();
  check_ramp();
  check_hopping_free(basis5);
  check_solver();
  check_properties(basis5);

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failed, %.0f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
