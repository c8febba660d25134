#pragma once

#include <string>
#include <utility>
#include <vector>

#include "congestion/solver.hpp"

namespace congestion {

// a + b f(2 pi (x - c t)) with f = cos or sin.
struct Wave {
  enum class Shape { cos, sin };
  double mean = 0.0;
  double amp = 0.0;
  Shape shape = Shape::cos;
  double speed = 1.0;

  double value(double x, double t) const;
  double dx(double x, double t) const;
  double dxx(double x, double t) const;
  double dt(double x, double t) const;
};

// Exact density and transported velocity (u for u_form, w for w_form).
struct ManufacturedCase {
  std::string name;
  Formulation formulation = Formulation::u_form;
  double gamma = 4.0;
  double t_end = 0.25;
  Wave density;
  Wave velocity;
};

const std::vector<ManufacturedCase>& shipped_mms_cases();

// Default refinement ladder. Velocity profiles with stagnation points are
// still pre-asymptotic for the donor-cell flux below 256 cells.
const std::vector<int>& mms_resolutions();
const ManufacturedCase& find_mms_case(const std::string& name);

// (S_rho, S_mom) from the closed-form derivatives of the case.
std::pair<double, double> mms_sources(const ManufacturedCase& c, double x, double t);

State mms_exact_state(const ManufacturedCase& c, const Grid& g, double t);

struct ConvergenceStudy {
  std::vector<int> resolutions;
  std::vector<double> err_rho_l1, err_rho_linf, err_mom_l1, err_mom_linf;
  // order[k] compares resolutions k and k+1.
  std::vector<double> order_rho_l1, order_mom_l1;
  // All errors at rounding level; orders carry no information.
  bool exact = false;
};

double observed_order(double coarse_error, double fine_error);

ConvergenceStudy convergence_study(const ManufacturedCase& c,
                                   const std::vector<int>& resolutions,
                                   const SchemeConfig& config);

// Errors against a run on a 4x finer grid, injected by 4-cell averages.
using InitialStateBuilder = std::function<State(const Grid&)>;
ConvergenceStudy self_convergence_study(const InitialStateBuilder& build,
                                        const ModelParams& params,
                                        const SchemeConfig& config, double t_end,
                                        const std::vector<int>& resolutions);

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(Matrix a, std::vector<double> b);

// Independent re-implementation of one step with dense linear algebra.
State dense_step_oracle(const State& s, const Grid& g, const ModelParams& params,
                        double dt, MomentumFace face = MomentumFace::limited);

}  // namespace congestion
