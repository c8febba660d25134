#include "congestion/suites.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "congestion/diagnostics.hpp"
#include "congestion/initial_data.hpp"
#include "congestion/sweep.hpp"
#include "congestion/tolerances.hpp"
#include "congestion/tridiagonal.hpp"
#include "congestion/verify.hpp"

namespace congestion {

namespace {

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

CheckLine verdict_line(const std::string& name, const Verdict& v) {
  return {name, v.holds, "worst " + sci(v.worst) + " vs tolerance " + sci(v.tolerance)};
}

}  // namespace

std::vector<CheckLine> run_checks(const Trajectory& traj, const Grid& g,
                                  Formulation formulation) {
  std::vector<CheckLine> out;
  out.push_back(verdict_line("mass conservation", mass_conservation_check(traj)));
  out.push_back(verdict_line("int rho w^2 non-increasing", ke_w_monotonicity_check(traj)));

  double e_lo = 0.0, e_hi = 0.0;
  for (const Snapshot& s : traj.snapshots) {
    e_lo = std::min(e_lo, s.record.energy_residual);
    e_hi = std::max(e_hi, s.record.energy_residual);
  }
  const double E1 = traj.initial.E1;
  out.push_back({"basic energy residual in range",
                 e_lo >= -tol::energy_lower_rel * E1 && e_hi <= tol::energy_upper,
                 "[" + sci(e_lo) + ", " + sci(e_hi) + "] with E1 = " + sci(E1)});
  out.push_back(verdict_line("density lower bound", lower_bound_check(traj)));
  if (formulation == Formulation::w_form) {
    out.push_back(verdict_line("reconstructed W maximum", W_max_principle_check(traj)));
    out.push_back(verdict_line("int rho W^2 drift", rhoW2_conservation_check(traj)));
  }
  const PsiSeries psi = psi_test_function(traj, g);
  out.push_back({"Psi periodicity", psi.periodicity_error <= tol::exact_conservation,
                 "max " + sci(psi.periodicity_error)});
  out.push_back({"Psi derivative", psi.derivative_error <= tol::psi_derivative_dx * g.dx(),
                 "max " + sci(psi.derivative_error) + " vs " +
                     sci(tol::psi_derivative_dx * g.dx())});
  return out;
}

std::vector<CheckLine> mms_suite() {
  std::vector<CheckLine> out;
  const SchemeConfig cfg;
  for (const ManufacturedCase& c : shipped_mms_cases()) {
    const ConvergenceStudy st = convergence_study(c, mms_resolutions(), cfg);
    if (st.exact) {
      out.push_back({"mms " + c.name, true, "exact to rounding"});
      continue;
    }
    bool pass = true;
    std::string detail = "L1 orders rho";
    for (double o : st.order_rho_l1) {
      pass = pass && o >= 0.8 && o <= 1.3;
      detail += " " + sci(o);
    }
    detail += ", mom";
    for (double o : st.order_mom_l1) {
      pass = pass && o >= 0.8 && o <= 1.3;
      detail += " " + sci(o);
    }
    out.push_back({"mms " + c.name, pass, detail});
  }
  return out;
}

std::vector<CheckLine> oracle_suite() {
  std::vector<CheckLine> out;
  // Single step against the dense re-implementation, both formulations.
  for (int n : {4, 5, 8}) {
    const Grid g(n);
    for (double gamma : {2.0, 10.0}) {
      const ModelParams params(gamma);
      Field rho(n), w(n);
      for (int i = 0; i < n; ++i) {
        rho[i] = 1.0 + 0.1 * std::cos(2.0 * M_PI * g.x(i));
        w[i] = 0.3 * std::sin(2.0 * M_PI * g.x(i)) + 0.05;
      }
      for (Formulation f : {Formulation::u_form, Formulation::w_form}) {
        for (MomentumFace face : {MomentumFace::limited, MomentumFace::upwind}) {
          if (f == Formulation::u_form && face == MomentumFace::upwind) continue;
          const State s = state_from_profile({rho, w}, g, params, f);
          SchemeConfig cfg;
          cfg.momentum_face = face;
          const double dt = 1e-4;
          const State a = step(s, g, params, cfg, dt);
          const State b = dense_step_oracle(s, g, params, dt, face);
          double diff = 0.0;
          for (int i = 0; i < n; ++i) {
            diff = std::max({diff, std::abs(a.rho[i] - b.rho[i]), std::abs(a.mom[i] - b.mom[i])});
          }
          std::string name = "dense step oracle n=" + std::to_string(n) + " gamma=" +
                             sci(gamma) + " " + to_string(f);
          if (f == Formulation::w_form) name += " " + to_string(face);
          out.push_back({name, diff <= 1e-12, "max difference " + sci(diff)});
        }
      }
    }
  }
  // Random strictly dominant cyclic systems against dense elimination.
  std::mt19937_64 rng(20241018);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 14;
    std::vector<double> sub(n - 1), sup(n - 1), diag(n), rhs(n);
    for (auto& v : sub) v = U(rng);
    for (auto& v : sup) v = U(rng);
    const double lo = U(rng), hi = U(rng);
    for (auto& v : rhs) v = U(rng);
    for (int i = 0; i < n; ++i) {
      const double l = i > 0 ? sub[i - 1] : hi;
      const double r = i + 1 < n ? sup[i] : lo;
      diag[i] = std::abs(l) + std::abs(r) + 0.5 + std::abs(U(rng));
    }
    const std::vector<double> x = solve_cyclic_tridiagonal(sub, diag, sup, lo, hi, rhs);
    Matrix A(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      A[i][i] = diag[i];
      if (i + 1 < n) {
        A[i][i + 1] = sup[i];
        A[i + 1][i] = sub[i];
      }
    }
    A[0][n - 1] = hi;
    A[n - 1][0] = lo;
    const std::vector<double> ref = dense_solve(A, rhs);
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(x[i] - ref[i]));
  }
  out.push_back({"cyclic tridiagonal vs dense, 100 random systems", worst <= 1e-12,
                 "max difference " + sci(worst)});
  return out;
}

std::vector<CheckLine> invariants_suite(const std::string& config_dir) {
  std::vector<CheckLine> out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(config_dir)) {
    if (e.path().extension() == ".cfg") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string tag = path.filename().string() + ": ";
    const RunConfig cfg = load_config(path.string());
    const Grid g(cfg.n_cells);
    if (!cfg.is_sweep()) {
      const ModelParams params(*cfg.gamma);
      const InitialData init = make_initial_data(cfg.init, g, params, cfg.scheme.formulation);
      const Trajectory traj = run_simulation(init.state, g, params, cfg.scheme, cfg.t_end);
      for (CheckLine line : run_checks(traj, g, cfg.scheme.formulation)) {
        line.name = tag + line.name;
        out.push_back(line);
      }
      continue;
    }
    SweepConfig sc;
    sc.gammas = cfg.gammas;
    sc.recipe = cfg.init;
    sc.n_cells = cfg.n_cells;
    sc.t_end = cfg.t_end;
    sc.scheme = cfg.scheme;
    sc.parallel_runs = cfg.parallel_runs;
    const SweepReport rep = run_sweep(sc);
    bool all_ok = true, decreasing = true;
    for (std::size_t k = 0; k < rep.rows.size(); ++k) {
      const SweepRow& row = rep.rows[k];
      all_ok = all_ok && row.ok;
      if (k > 0 && row.switching_residual_max > rep.rows[k - 1].switching_residual_max) {
        decreasing = false;
      }
      if (!row.ok) continue;
      for (CheckLine line : run_checks(row.trajectory, g, cfg.scheme.formulation)) {
        line.name = tag + "gamma=" + sci(row.gamma) + " " + line.name;
        out.push_back(line);
      }
    }
    out.push_back({tag + "all gamma runs completed", all_ok, ""});
    out.push_back({tag + "switching residual non-increasing in gamma", decreasing, ""});
  }
  return out;
}

}  // namespace congestion
