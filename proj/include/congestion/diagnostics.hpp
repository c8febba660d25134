#pragma once

#include <string>
#include <vector>

#include "congestion/grid.hpp"
#include "congestion/model.hpp"
#include "congestion/records.hpp"

namespace congestion {

InitialDataSummary summarize_initial(const State& s, const Grid& g,
                                     const ModelParams& params);

Accumulators empty_accumulators(const Grid& g);

// Adds one step's left-endpoint contributions evaluated on the pre-step
// state. The basic dissipation and the mass-flux integral are added by the
// solver, which knows what the step actually applied.
void accumulate_explicit(Accumulators& acc, const State& before, const Grid& g,
                         const ModelParams& params, double mean_rho, double dt);

DiagnosticsRecord record(const State& s, const Grid& g, const ModelParams& params,
                         const Accumulators& acc, const InitialDataSummary& init);

// ke_u + 2 * dissipation - E1. Zero in the continuum; <= 0 for the scheme.
double basic_energy_residual(const DiagnosticsRecord& rec, double E1,
                             double dissipation);

// int H(t) - int H(0) + int int rho (dp)^2 - int int dp rho w.
double H_balance_residual(const DiagnosticsRecord& rec,
                          const InitialDataSummary& init, const Accumulators& acc);

// int rho p(t) - int rho0 p(rho0) + int int lambda du. Uses rho p = (gamma+1) H.
double rho_p_balance_residual(const DiagnosticsRecord& rec,
                              const InitialDataSummary& init,
                              const Accumulators& acc, const ModelParams& params);

// 1 / (M0 t + 1 / rho0_min), written so that t = 0 returns rho0_min exactly.
double density_lower_bound(const InitialDataSummary& init, double t);

double lower_bound_margin(const DiagnosticsRecord& rec, const InitialDataSummary& init);

struct Verdict {
  bool holds = true;
  double worst = 0.0;      // largest observed violation or drift
  double tolerance = 0.0;
};

enum class WSource { transported, reconstructed };

Verdict W_max_principle_check(const std::vector<double>& W_max_series, WSource source);
Verdict W_max_principle_check(const Trajectory& traj);

Verdict rhoW2_conservation_check(const Trajectory& traj);

// Largest relative increase of int rho w^2 between consecutive snapshots.
Verdict ke_w_monotonicity_check(const Trajectory& traj);

Verdict mass_conservation_check(const Trajectory& traj);

Verdict lower_bound_check(const Trajectory& traj);

struct PsiSeries {
  std::vector<double> times;
  // Face values Psi(x_{j-1/2}), j = 0..n, one vector per snapshot.
  std::vector<std::vector<double>> faces;
  double periodicity_error = 0.0;  // max |Psi(0) - Psi(1)|
  double derivative_error = 0.0;   // max |ddx Psi - (rho - <rho>)|
};

PsiSeries psi_test_function(const Trajectory& traj, const Grid& g);

struct WeightedDissipation {
  double I_mean = 0.0;
  double I_plain = 0.0;
  double low = 0.0;
  double high = 0.0;
};

WeightedDissipation weighted_dissipation_report(const Accumulators& acc);
WeightedDissipation weighted_dissipation_report(const Trajectory& traj);

// || (1 - rho) pi(rho) ||_L2
double switching_residual(const Field& rho, const ModelParams& params, const Grid& g);

}  // namespace congestion
