#include "congestion/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "congestion/tolerances.hpp"

namespace congestion {

namespace {

double weighted_square(const Field& weight, const Field& f, const Grid& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += weight[i] * f[i] * f[i];
  return s * g.dx();
}

double rhoW2_of(const Field& rho, const Field& w, const Grid& g) {
  const Field dw = ddx_central(w, g);
  double s = 0.0;
  for (std::size_t i = 0; i < dw.size(); ++i) s += dw[i] * dw[i] / rho[i];
  return s * g.dx();
}

}  // namespace

InitialDataSummary summarize_initial(const State& s, const Grid& g,
                                     const ModelParams& params) {
  const Velocities v = velocities(s, g, params);
  const Field W = compute_W(s.rho, v.w, g);
  InitialDataSummary out;
  const double W_max = *std::max_element(W.begin(), W.end());
  out.M0 = std::max(0.0, W_max);
  out.W_max0 = W_max;
  out.rho0_min = *std::min_element(s.rho.begin(), s.rho.end());
  out.rho0_max = *std::max_element(s.rho.begin(), s.rho.end());
  out.E0 = integrate(s.rho, g);
  out.mean_rho0 = out.E0 / g.length();
  out.E1 = weighted_square(s.rho, v.u, g);
  out.ke_w0 = weighted_square(s.rho, v.w, g);
  out.H0 = integrate(enthalpy_H(s.rho, params), g);
  out.E2 = out.ke_w0 + out.H0;
  out.rhoW2_0 = rhoW2_of(s.rho, v.w, g);
  out.dw0_l2 = norm(ddx_central(v.w, g), g, NormKind::l2);
  return out;
}

Accumulators empty_accumulators(const Grid& g) {
  Accumulators acc;
  acc.mass_flux_time_integral.assign(g.n_cells(), 0.0);
  return acc;
}

void accumulate_explicit(Accumulators& acc, const State& before, const Grid& g,
                         const ModelParams& params, double mean_rho, double dt) {
  const Velocities v = velocities(before, g, params);
  const Field du = ddx_central(v.u, g);
  const Field dp = ddx_central(pressure(before.rho, params), g);
  const double threshold = 0.5 * (1.0 + mean_rho);
  double offd = 0.0, work = 0.0, plain = 0.0, weighted = 0.0, low = 0.0, high = 0.0;
  for (std::size_t i = 0; i < du.size(); ++i) {
    const double rho = before.rho[i];
    const double lam_du = lambda_visc(rho, params) * du[i];
    offd += rho * dp[i] * dp[i];
    work += dp[i] * rho * v.w[i];
    plain += lam_du;
    weighted += (rho - mean_rho) * lam_du;
    (rho <= threshold ? low : high) += lam_du;
  }
  const double h = dt * g.dx();
  acc.offset_dissipation += h * offd;
  acc.work += h * work;
  acc.plain_dissipation += h * plain;
  acc.weighted_dissipation += h * weighted;
  acc.plain_low += h * low;
  acc.plain_high += h * high;
}

DiagnosticsRecord record(const State& s, const Grid& g, const ModelParams& params,
                         const Accumulators& acc, const InitialDataSummary& init) {
  const Velocities v = velocities(s, g, params);
  const Field W = compute_W(s.rho, v.w, g);
  const Field pi = potential_pi(s.rho, params);

  DiagnosticsRecord r;
  r.t = s.t;
  r.mass = integrate(s.rho, g);
  r.ke_u = weighted_square(s.rho, v.u, g);
  r.ke_w = weighted_square(s.rho, v.w, g);
  r.H_total = integrate(enthalpy_H(s.rho, params), g);
  const auto [rmin, rmax] = std::minmax_element(s.rho.begin(), s.rho.end());
  r.rho_min = *rmin;
  r.rho_max = *rmax;
  const auto [wmin, wmax] = std::minmax_element(W.begin(), W.end());
  r.W_min = *wmin;
  r.W_max = *wmax;
  r.rhoW2 = rhoW2_of(s.rho, v.w, g);
  r.pi_l1 = norm(pi, g, NormKind::l1);
  r.dpi_l2 = norm(ddx_central(pi, g), g, NormKind::l2);
  r.switching_residual = switching_residual(s.rho, params, g);
  r.lower_bound_margin = lower_bound_margin(r, init);
  r.energy_residual = basic_energy_residual(r, init.E1, acc.dissipation);
  r.H_balance_residual = H_balance_residual(r, init, acc);
  r.rho_p_balance_residual = rho_p_balance_residual(r, init, acc, params);
  return r;
}

double basic_energy_residual(const DiagnosticsRecord& rec, double E1, double dissipation) {
  return rec.ke_u + 2.0 * dissipation - E1;
}

double H_balance_residual(const DiagnosticsRecord& rec, const InitialDataSummary& init,
                          const Accumulators& acc) {
  return rec.H_total - init.H0 + acc.offset_dissipation - acc.work;
}

double rho_p_balance_residual(const DiagnosticsRecord& rec, const InitialDataSummary& init,
                              const Accumulators& acc, const ModelParams& params) {
  return (params.gamma + 1.0) * (rec.H_total - init.H0) + acc.plain_dissipation;
}

double density_lower_bound(const InitialDataSummary& init, double t) {
  return init.rho0_min / (init.M0 * t * init.rho0_min + 1.0);
}

double lower_bound_margin(const DiagnosticsRecord& rec, const InitialDataSummary& init) {
  return rec.rho_min - density_lower_bound(init, rec.t);
}

Verdict W_max_principle_check(const std::vector<double>& W_max_series, WSource source) {
  Verdict v;
  if (W_max_series.empty()) return v;
  const double W0 = W_max_series.front();
  const double slack =
      source == WSource::transported ? tol::transported_W : tol::reconstruction;
  v.tolerance = slack * (1.0 + std::abs(W0));
  for (double W : W_max_series) v.worst = std::max(v.worst, W - W0);
  v.holds = v.worst <= v.tolerance;
  return v;
}

Verdict W_max_principle_check(const Trajectory& traj) {
  std::vector<double> series;
  for (const Snapshot& s : traj.snapshots) series.push_back(s.record.W_max);
  return W_max_principle_check(series, WSource::reconstructed);
}

Verdict rhoW2_conservation_check(const Trajectory& traj) {
  Verdict v;
  v.tolerance = tol::reconstruction;
  if (traj.snapshots.empty()) return v;
  const double c0 = traj.snapshots.front().record.rhoW2;
  for (const Snapshot& s : traj.snapshots) {
    v.worst = std::max(v.worst, std::abs(s.record.rhoW2 - c0) / (1.0 + c0));
  }
  v.holds = v.worst <= v.tolerance;
  return v;
}

Verdict ke_w_monotonicity_check(const Trajectory& traj) {
  Verdict v;
  v.tolerance = tol::ke_w_monotone;
  if (traj.snapshots.empty()) return v;
  const double k0 = traj.snapshots.front().record.ke_w;
  const double scale = k0 > 0.0 ? k0 : 1.0;
  for (std::size_t k = 1; k < traj.snapshots.size(); ++k) {
    const double inc = traj.snapshots[k].record.ke_w - traj.snapshots[k - 1].record.ke_w;
    v.worst = std::max(v.worst, inc / scale);
  }
  v.holds = v.worst <= v.tolerance;
  return v;
}

Verdict mass_conservation_check(const Trajectory& traj) {
  Verdict v;
  v.tolerance = tol::exact_conservation;
  if (traj.snapshots.empty()) return v;
  const double m0 = traj.snapshots.front().record.mass;
  for (const Snapshot& s : traj.snapshots) {
    v.worst = std::max(v.worst, std::abs(s.record.mass - m0) / m0);
  }
  v.holds = v.worst <= v.tolerance;
  return v;
}

Verdict lower_bound_check(const Trajectory& traj) {
  Verdict v;
  v.tolerance = tol::lower_bound_rel * traj.initial.rho0_min;
  for (const Snapshot& s : traj.snapshots) {
    v.worst = std::max(v.worst, -s.record.lower_bound_margin);
  }
  v.holds = v.worst <= v.tolerance;
  return v;
}

PsiSeries psi_test_function(const Trajectory& traj, const Grid& g) {
  PsiSeries out;
  if (traj.snapshots.empty()) return out;
  const int n = g.n_cells();
  const double dx = g.dx();
  const double mean = traj.initial.mean_rho0;
  const Field& rho0 = traj.snapshots.front().state.rho;

  std::vector<double> prefix(n + 1, 0.0);
  for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + dx * (rho0[j] - mean);

  for (const Snapshot& snap : traj.snapshots) {
    // Face j - 1/2 carries the time integral stored for face index j - 1.
    const Field& A = snap.acc.mass_flux_time_integral;
    std::vector<double> psi(n + 1);
    for (int j = 0; j <= n; ++j) psi[j] = prefix[j] - A[g.wrap(j - 1)];
    out.periodicity_error = std::max(out.periodicity_error, std::abs(psi[0] - psi[n]));
    for (int j = 0; j < n; ++j) {
      const double d = (psi[j + 1] - psi[j]) / dx;
      out.derivative_error =
          std::max(out.derivative_error, std::abs(d - (snap.state.rho[j] - mean)));
    }
    out.times.push_back(snap.state.t);
    out.faces.push_back(std::move(psi));
  }
  return out;
}

WeightedDissipation weighted_dissipation_report(const Accumulators& acc) {
  return {acc.weighted_dissipation, acc.plain_dissipation, acc.plain_low, acc.plain_high};
}

WeightedDissipation weighted_dissipation_report(const Trajectory& traj) {
  return weighted_dissipation_report(traj.acc);
}

double switching_residual(const Field& rho, const ModelParams& params, const Grid& g) {
  require_on_grid(rho, g, "rho");
  Field f(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    f[i] = (1.0 - rho[i]) * potential_pi(rho[i], params);
  }
  return norm(f, g, NormKind::l2);
}

}  // namespace congestion
