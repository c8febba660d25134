#include "congestion/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "congestion/diagnostics.hpp"
#include "congestion/errors.hpp"

namespace congestion {

std::string to_string(FitStatus s) {
  switch (s) {
    case FitStatus::fitted: return "fitted";
    case FitStatus::never_exceeded: return "congestion never exceeded";
    case FitStatus::insufficient_data: return "insufficient data";
  }
  return "";
}

CheckedRecipe validate_recipe(const InitialRecipe& recipe, const std::vector<double>& gammas,
                              const Grid& g) {
  if (gammas.empty()) throw ConfigError("sweep needs at least one gamma");
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (!(gammas[k] > 0.0) || !std::isfinite(gammas[k])) {
      throw ConfigError("sweep gammas must be positive and finite");
    }
    if (k > 0 && !(gammas[k] > gammas[k - 1])) {
      throw ConfigError("sweep gammas must be strictly increasing");
    }
  }
  CheckedRecipe out;
  out.recipe = recipe;
  out.profile = sample_recipe(recipe, g);
  check_hypotheses(out.profile, recipe, gammas.back(), g);
  const ModelParams tightest(gammas.back());
  const State s = state_from_profile(out.profile, g, tightest, Formulation::w_form);
  out.summary = summarize_initial(s, g, tightest);
  return out;
}

int effective_parallel_runs(int configured) {
  if (const char* env = std::getenv("CONGESTION_SIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError("CONGESTION_SIM_THREADS must be a positive integer");
    }
    return static_cast<int>(v);
  }
  if (configured < 1) throw ConfigError("sweep.parallel_runs must be >= 1");
  return configured;
}

namespace {

SweepRow run_one(double gamma, const CheckedRecipe& checked, const SweepConfig& config,
                 const Grid& g) {
  SweepRow row;
  row.gamma = gamma;
  const auto start = std::chrono::steady_clock::now();
  try {
    const ModelParams params(gamma);
    const State init =
        state_from_profile(checked.profile, g, params, config.scheme.formulation);
    row.trajectory = run_simulation(init, g, params, config.scheme, config.t_end);
    const auto& snaps = row.trajectory.snapshots;
    row.min_rho_over_run = snaps.front().record.rho_min;
    const double W0 = snaps.front().record.W_max;
    for (const Snapshot& s : snaps) {
      const DiagnosticsRecord& r = s.record;
      row.max_rho_over_run = std::max(row.max_rho_over_run, r.rho_max);
      row.min_rho_over_run = std::min(row.min_rho_over_run, r.rho_min);
      row.switching_residual_max = std::max(row.switching_residual_max, r.switching_residual);
      row.pi_l1_max = std::max(row.pi_l1_max, r.pi_l1);
      row.dpi_l2_max = std::max(row.dpi_l2_max, r.dpi_l2);
      row.W_max_drift = std::max(row.W_max_drift, std::abs(r.W_max - W0));
    }
    row.I_plain_abs = std::abs(row.trajectory.acc.plain_dissipation);
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  row.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
  config.scheme.validate();
  if (!(config.t_end > 0.0)) throw ConfigError("time.t_end must be positive");
  const Grid g(config.n_cells);
  const CheckedRecipe checked = validate_recipe(config.recipe, config.gammas, g);
  const int threads = std::min<int>(effective_parallel_runs(config.parallel_runs),
                                    static_cast<int>(config.gammas.size()));

  SweepReport report;
  report.rows.resize(config.gammas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < config.gammas.size(); k = next++) {
      report.rows[k] = run_one(config.gammas[k], checked, config, g);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Cauchy differences between consecutive successful rows, in gamma order.
  const SweepRow* prev = nullptr;
  Field prev_w;
  for (const SweepRow& row : report.rows) {
    if (!row.ok) continue;
    const ModelParams params(row.gamma);
    Field w = velocities(row.trajectory.final_state, g, params).w;
    if (prev) {
      const Field& a = prev->trajectory.final_state.rho;
      const Field& b = row.trajectory.final_state.rho;
      Field drho(a.size()), dw(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        drho[i] = a[i] - b[i];
        dw[i] = prev_w[i] - w[i];
      }
      report.rho_cauchy_l1.push_back(norm(drho, g, NormKind::l1));
      report.w_cauchy_linf.push_back(norm(dw, g, NormKind::linf));
    }
    prev = &row;
    prev_w = std::move(w);
  }
  report.fit = fit_congestion_rate(report);
  return report;
}

CongestionFit fit_congestion_rate(const std::vector<double>& gammas,
                                  const std::vector<double>& max_rhos) {
  if (gammas.size() != max_rhos.size()) {
    throw DimensionError("fit needs one max density per gamma");
  }
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    if (max_rhos[k] > 1.0) {
      xs.push_back(std::log(gammas[k]) / gammas[k]);
      ys.push_back(max_rhos[k] - 1.0);
    }
  }
  CongestionFit fit;
  fit.used_rows = static_cast<int>(xs.size());
  if (xs.empty()) {
    fit.status = FitStatus::never_exceeded;
    return fit;
  }
  if (xs.size() < 3) {
    fit.status = FitStatus::insufficient_data;
    return fit;
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx == 0.0) {
    fit.status = FitStatus::insufficient_data;
    return fit;
  }
  fit.status = FitStatus::fitted;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double e = ys[k] - (fit.intercept + fit.slope * xs[k]);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

CongestionFit fit_congestion_rate(const SweepReport& report) {
  std::vector<double> gammas, max_rhos;
  for (const SweepRow& row : report.rows) {
    if (!row.ok) continue;
    gammas.push_back(row.gamma);
    max_rhos.push_back(row.max_rho_over_run);
  }
  return fit_congestion_rate(gammas, max_rhos);
}

}  // namespace congestion
