#pragma once

#include <string>
#include <vector>

#include "congestion/grid.hpp"
#include "congestion/model.hpp"
#include "congestion/records.hpp"

namespace congestion {

enum class InitKind { cosine, two_mode, custom_csv };

std::string to_string(InitKind k);
InitKind parse_init_kind(const std::string& s);

// rho0 = rho_mean + rho_amp cos(2 pi x + phase), w0 = w_amp sin(2 pi x);
// two_mode adds the second harmonic of both at half amplitude.
struct InitialRecipe {
  InitKind kind = InitKind::cosine;
  double rho_mean = 0.8;
  double rho_amp = 0.1;
  double w_amp = 0.2;
  double phase = 0.0;
  // Required upper bound on the mean density, strictly below 1.
  double mean_bound = 0.95;
  std::string file;  // custom_csv only
};

struct InitialProfile {
  Field rho;
  Field w;
};

// Samples the recipe on the grid without checking any hypothesis.
InitialProfile sample_recipe(const InitialRecipe& recipe, const Grid& g);

// Checks the well-posedness hypotheses of the congestion limit for every
// gamma up to gamma_max. Throws ConfigError naming the violated inequality.
void check_hypotheses(const InitialProfile& profile, const InitialRecipe& recipe,
                      double gamma_max, const Grid& g);

struct InitialData {
  State state;
  InitialDataSummary summary;
};

InitialData make_initial_data(const InitialRecipe& recipe, const Grid& g,
                              const ModelParams& params, Formulation formulation);

// Builds a state at t = 0 from sampled profiles (u derived via w_to_u).
State state_from_profile(const InitialProfile& profile, const Grid& g,
                         const ModelParams& params, Formulation formulation);

}  // namespace congestion
