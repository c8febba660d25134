#pragma once

#include <string>
#include <vector>

#include "congestion/initial_data.hpp"
#include "congestion/solver.hpp"

namespace congestion {

struct SweepConfig {
  std::vector<double> gammas{5, 10, 20, 40, 80};
  InitialRecipe recipe;
  int n_cells = 256;
  double t_end = 0.5;
  SchemeConfig scheme;
  int parallel_runs = 1;
};

struct CheckedRecipe {
  InitialRecipe recipe;
  InitialProfile profile;
  // Summary for the largest gamma (the tightest hypotheses).
  InitialDataSummary summary;
};

CheckedRecipe validate_recipe(const InitialRecipe& recipe,
                              const std::vector<double>& gammas, const Grid& g);

struct SweepRow {
  double gamma = 0.0;
  bool ok = false;
  std::string error;
  double max_rho_over_run = 0.0;
  double min_rho_over_run = 0.0;
  double switching_residual_max = 0.0;
  double pi_l1_max = 0.0;
  double dpi_l2_max = 0.0;
  double I_plain_abs = 0.0;
  double W_max_drift = 0.0;
  double runtime = 0.0;  // seconds, not serialized into data files
  Trajectory trajectory;
};

enum class FitStatus { fitted, never_exceeded, insufficient_data };

std::string to_string(FitStatus s);

struct CongestionFit {
  FitStatus status = FitStatus::never_exceeded;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int used_rows = 0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  // Between consecutive successful gammas, at t_end.
  std::vector<double> rho_cauchy_l1;
  std::vector<double> w_cauchy_linf;
  CongestionFit fit;
};

// Fits (max_rho - 1) against ln(gamma) / gamma over rows with max_rho > 1.
CongestionFit fit_congestion_rate(const std::vector<double>& gammas,
                                  const std::vector<double>& max_rhos);
CongestionFit fit_congestion_rate(const SweepReport& report);

// Threads: config.parallel_runs, overridden by CONGESTION_SIM_THREADS.
SweepReport run_sweep(const SweepConfig& config);

int effective_parallel_runs(int configured);

}  // namespace congestion
