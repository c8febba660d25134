#pragma once

#include <vector>

#include "congestion/grid.hpp"
#include "congestion/model.hpp"

namespace congestion {

// Quantities fixed by the initial state and reused at every snapshot.
struct InitialDataSummary {
  double M0 = 0.0;  // max of d(w0)/dx / rho0
  double rho0_min = 0.0;
  double rho0_max = 0.0;
  double mean_rho0 = 0.0;
  double E0 = 0.0;  // mass
  double E1 = 0.0;  // int rho0 u0^2
  double E2 = 0.0;  // int rho0 w0^2 + int H(rho0)
  double ke_w0 = 0.0;
  double H0 = 0.0;
  double rhoW2_0 = 0.0;
  double W_max0 = 0.0;
  double dw0_l2 = 0.0;
};

// Running space-time integrals. Everything except `dissipation` and the
// mass-flux integral uses left-endpoint rectangles in time and central
// differences in space.
struct Accumulators {
  double dissipation = 0.0;          // int int lambda (du)^2, the scheme's own form
  double offset_dissipation = 0.0;   // int int rho (dp)^2
  double work = 0.0;                 // int int dp rho w
  double weighted_dissipation = 0.0; // int int (rho - <rho>) lambda du
  double plain_dissipation = 0.0;    // int int lambda du
  double plain_low = 0.0;            // ... restricted to rho <= S_m
  double plain_high = 0.0;           // ... restricted to rho > S_m
  // int F dt per face, F the mass flux the scheme applied; face j sits
  // between cells j and j+1.
  Field mass_flux_time_integral;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double ke_u = 0.0;
  double ke_w = 0.0;
  double H_total = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  double W_max = 0.0;
  double W_min = 0.0;
  double rhoW2 = 0.0;
  double pi_l1 = 0.0;
  double dpi_l2 = 0.0;
  double switching_residual = 0.0;
  double lower_bound_margin = 0.0;
  double energy_residual = 0.0;
  double H_balance_residual = 0.0;
  double rho_p_balance_residual = 0.0;
};

struct Snapshot {
  State state;
  DiagnosticsRecord record;
  Accumulators acc;
};

struct Trajectory {
  int n_cells = 0;
  double gamma = 0.0;
  InitialDataSummary initial;
  std::vector<Snapshot> snapshots;
  State final_state;
  Accumulators acc;
  long steps = 0;
  long halvings = 0;
};

}  // namespace congestion
