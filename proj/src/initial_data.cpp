#include "congestion/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "congestion/diagnostics.hpp"
#include "congestion/errors.hpp"
#include "congestion/io.hpp"

namespace congestion {

namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

InitialProfile read_profile(const std::string& path, const Grid& g) {
  const CsvTable table = read_csv(path);
  const std::size_t cx = table.column("x");
  const std::size_t cr = table.column("rho");
  const std::size_t cw = table.column("w");
  if (table.rows.empty()) throw ConfigError("initial data file '" + path + "' has no rows");
  InitialProfile p;
  p.rho.resize(g.n_cells());
  p.w.resize(g.n_cells());
  for (int i = 0; i < g.n_cells(); ++i) {
    const double xi = g.x(i);
    std::size_t best = 0;
    double best_d = 2.0;
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      double d = std::abs(table.rows[k][cx] - xi);
      d = std::min(d, 1.0 - d);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    p.rho[i] = table.rows[best][cr];
    p.w[i] = table.rows[best][cw];
  }
  return p;
}

}  // namespace

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::cosine: return "cosine";
    case InitKind::two_mode: return "two_mode";
    case InitKind::custom_csv: return "custom_csv";
  }
  return "cosine";
}

InitKind parse_init_kind(const std::string& s) {
  if (s == "cosine") return InitKind::cosine;
  if (s == "two_mode") return InitKind::two_mode;
  if (s == "custom_csv") return InitKind::custom_csv;
  throw ConfigError("unknown init.kind '" + s + "' (expected cosine, two_mode or custom_csv)");
}

InitialProfile sample_recipe(const InitialRecipe& recipe, const Grid& g) {
  if (recipe.kind == InitKind::custom_csv) return read_profile(recipe.file, g);
  if (!(recipe.rho_amp >= 0.0 && recipe.rho_mean > recipe.rho_amp)) {
    throw ConfigError("initial density needs rho_mean > rho_amp >= 0");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  InitialProfile p;
  p.rho.resize(g.n_cells());
  p.w.resize(g.n_cells());
  for (int i = 0; i < g.n_cells(); ++i) {
    const double x = g.x(i);
    double rho = recipe.rho_mean + recipe.rho_amp * std::cos(two_pi * x + recipe.phase);
    double w = recipe.w_amp * std::sin(two_pi * x);
    if (recipe.kind == InitKind::two_mode) {
      rho += 0.5 * recipe.rho_amp * std::cos(2.0 * (two_pi * x + recipe.phase));
      w += 0.5 * recipe.w_amp * std::sin(2.0 * two_pi * x);
    }
    p.rho[i] = rho;
    p.w[i] = w;
  }
  return p;
}

void check_hypotheses(const InitialProfile& profile, const InitialRecipe& recipe,
                      double gamma_max, const Grid& g) {
  require_on_grid(profile.rho, g, "initial rho");
  require_on_grid(profile.w, g, "initial w");
  for (int i = 0; i < g.n_cells(); ++i) {
    if (!std::isfinite(profile.rho[i]) || !std::isfinite(profile.w[i])) {
      throw ConfigError("initial data is not finite in cell " + std::to_string(i));
    }
  }
  const double rmin = *std::min_element(profile.rho.begin(), profile.rho.end());
  const double rmax = *std::max_element(profile.rho.begin(), profile.rho.end());
  if (!(rmin > 0.0)) {
    throw ConfigError("hypothesis 'initial density bounded below by a positive constant' "
                      "violated: min rho0 = " + fmt(rmin));
  }
  const double cap = 1.0 + 1.0 / gamma_max;
  if (rmax > cap) {
    throw ConfigError("hypothesis 'initial density upper bound rho0 <= 1 + 1/gamma' "
                      "violated: max rho0 = " + fmt(rmax) + " > 1 + 1/" + fmt(gamma_max) +
                      " = " + fmt(cap));
  }
  if (!(recipe.mean_bound > 0.0 && recipe.mean_bound < 1.0)) {
    throw ConfigError("init.mean_bound must lie strictly between 0 and 1");
  }
  const double mean = integrate(profile.rho, g) / g.length();
  if (mean > recipe.mean_bound) {
    throw ConfigError("hypothesis 'mean density bounded away from 1' violated: <rho0> = " +
                      fmt(mean) + " > " + fmt(recipe.mean_bound));
  }
  const Field dw = ddx_central(profile.w, g);
  for (int i = 0; i < g.n_cells(); ++i) {
    if (!std::isfinite(dw[i] / profile.rho[i])) {
      throw ConfigError("hypothesis 'bounded initial desired-velocity gradient' violated");
    }
  }
}

State state_from_profile(const InitialProfile& profile, const Grid& g,
                         const ModelParams& params, Formulation formulation) {
  const State w_state = make_state(0.0, profile.rho, profile.w, Formulation::w_form);
  return convert(w_state, formulation, g, params);
}

InitialData make_initial_data(const InitialRecipe& recipe, const Grid& g,
                              const ModelParams& params, Formulation formulation) {
  const InitialProfile profile = sample_recipe(recipe, g);
  check_hypotheses(profile, recipe, params.gamma, g);
  InitialData out;
  out.state = state_from_profile(profile, g, params, formulation);
  out.summary = summarize_initial(out.state, g, params);
  return out;
}

}  // namespace congestion
