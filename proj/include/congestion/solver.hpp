#pragma once

#include <functional>
#include <string>
#include <utility>

#include "congestion/grid.hpp"
#include "congestion/model.hpp"
#include "congestion/records.hpp"

namespace congestion {

// Value of w carried by the w-form momentum flux. `upwind` takes the upwind
// cell average. `limited` moves it towards the cell edge by a limited slope,
// which removes the frozen-cell defect at sign changes of w.
enum class MomentumFace { upwind, limited };

std::string to_string(MomentumFace m);
MomentumFace parse_momentum_face(const std::string& s);

struct SchemeConfig {
  Formulation formulation = Formulation::w_form;
  MomentumFace momentum_face = MomentumFace::limited;
  double cfl = 0.45;
  double dt_max = 0.05;
  // Cap on the first step; later steps may grow by at most a factor 2.
  double dt_init = 0.05;
  double newton_tol = 1e-10;
  int max_halvings = 20;
  double snapshot_every = 0.01;

  void validate() const;
};

// Optional right-hand sides (S_rho, S_mom) evaluated at (x, t).
using SourceFn = std::function<std::pair<double, double>(double x, double t)>;

double compute_dt(const State& s, const Grid& g, const ModelParams& params,
                  const SchemeConfig& config);

// When mass_flux is given it receives the face mass flux of the step, so
// that rho_new = rho - dt/dx (F_j - F_{j-1}) (+ dt S_rho).
State step_u_form(const State& s, const Grid& g, const ModelParams& params,
                  const SchemeConfig& config, double dt,
                  const SourceFn& sources = {}, Field* mass_flux = nullptr);
State step_w_form(const State& s, const Grid& g, const ModelParams& params,
                  const SchemeConfig& config, double dt,
                  const SourceFn& sources = {}, Field* mass_flux = nullptr);
// Dispatches on s.formulation.
State step(const State& s, const Grid& g, const ModelParams& params,
           const SchemeConfig& config, double dt, const SourceFn& sources = {},
           Field* mass_flux = nullptr);

// Monotone upwind transport of W by u. Throws PreconditionError when
// dt max|u| / dx > 1.
Field step_W_transport(const Field& W, const Field& u, const Grid& g, double dt);

// dt * sum over faces of lambda_face(rho_before) * (du_after/dx)^2 * dx:
// the dissipation actually removed by the implicit momentum solve.
double step_dissipation(const State& before, const State& after, const Grid& g,
                        const ModelParams& params, double dt);

struct StepOutcome {
  State state;
  double dt = 0.0;
  int halvings = 0;
  Field mass_flux;
};

// One step with the positivity rescue: halves dt on a nonpositive density,
// up to config.max_halvings, then throws VacuumError.
StepOutcome advance(const State& s, const Grid& g, const ModelParams& params,
                    const SchemeConfig& config, double dt,
                    const SourceFn& sources = {});

struct RunHooks {
  std::function<void(const Snapshot&)> on_snapshot;
  // Called after every accepted step with the pre- and post-step states.
  std::function<void(const State&, const State&)> on_step;
};

Trajectory run_simulation(const State& init, const Grid& g,
                          const ModelParams& params, const SchemeConfig& config,
                          double t_end, const RunHooks& hooks = {},
                          const SourceFn& sources = {});

}  // namespace congestion
