#include "congestion/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "congestion/diagnostics.hpp"
#include "congestion/errors.hpp"
#include "congestion/tridiagonal.hpp"

namespace congestion {

VacuumError::VacuumError(double t, int cell, double gamma)
    : std::runtime_error("density vanished at t = " + std::to_string(t) + " in cell " +
                         std::to_string(cell) + " (gamma = " + std::to_string(gamma) + ")"),
      t(t),
      cell(cell),
      gamma(gamma) {}

std::string to_string(MomentumFace m) {
  return m == MomentumFace::upwind ? "upwind" : "limited";
}

MomentumFace parse_momentum_face(const std::string& s) {
  if (s == "upwind") return MomentumFace::upwind;
  if (s == "limited") return MomentumFace::limited;
  throw ConfigError("unknown momentum face '" + s + "' (expected upwind or limited)");
}

void SchemeConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("scheme.cfl must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw ConfigError("scheme.dt_max must be positive");
  if (!(dt_init > 0.0)) throw ConfigError("scheme.dt_init must be positive");
  if (!(newton_tol > 0.0)) throw ConfigError("scheme.newton_tol must be positive");
  if (max_halvings < 0) throw ConfigError("scheme.max_halvings must be >= 0");
  if (!(snapshot_every > 0.0)) throw ConfigError("snapshot cadence must be positive");
}

namespace {

int right(int i, int n) { return i + 1 < n ? i + 1 : 0; }
int left(int i, int n) { return i > 0 ? i - 1 : n - 1; }

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

// Face j sits between cells j and j+1; value is the arithmetic mean.
Field face_mean(const Field& c) {
  const int n = static_cast<int>(c.size());
  Field f(n);
  for (int j = 0; j < n; ++j) f[j] = 0.5 * (c[j] + c[right(j, n)]);
  return f;
}

// Donor-cell flux of q through each face with face velocity v.
Field donor_flux(const Field& q, const Field& v) {
  const int n = static_cast<int>(q.size());
  Field f(n);
  for (int j = 0; j < n; ++j) f[j] = v[j] * (v[j] > 0.0 ? q[j] : q[right(j, n)]);
  return f;
}

void check_positive(const Field& rho) {
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0)) throw PositivityError(static_cast<int>(i), rho[i]);
  }
}

// Solves (base_i) x_i - k c_{i-1/2} (x_{i-1} - x_i) - k c_{i+1/2} (x_{i+1} - x_i)
// = base_i guess_i on the torus, written for the increment x - guess so that
// a uniform guess is reproduced exactly.
Field implicit_diffusion(const Field& base, const Field& face_coeff, double k,
                         const Field& guess, double tol) {
  const int n = static_cast<int>(guess.size());
  Field diag(n), off(n - 1), rhs(n);
  for (int i = 0; i < n; ++i) {
    const int l = left(i, n), r = right(i, n);
    diag[i] = base[i] + k * (face_coeff[i] + face_coeff[l]);
    rhs[i] = k * (face_coeff[i] * (guess[r] - guess[i]) -
                  face_coeff[l] * (guess[i] - guess[l]));
  }
  for (int j = 0; j + 1 < n; ++j) off[j] = -k * face_coeff[j];
  const double corner = -k * face_coeff[n - 1];
  Field x = solve_cyclic_tridiagonal(off, diag, off, corner, corner, rhs, tol);
  for (int i = 0; i < n; ++i) x[i] += guess[i];
  return x;
}

void require_step(const State& s, const Grid& g, Formulation f, double dt) {
  if (s.formulation != f) {
    throw PreconditionError("step called with a " + to_string(s.formulation) + " state");
  }
  require_on_grid(s.rho, g, "rho");
  require_on_grid(s.mom, g, "mom");
  if (!(dt > 0.0)) throw PreconditionError("time step must be positive");
}

}  // namespace

double compute_dt(const State& s, const Grid& g, const ModelParams& params,
                  const SchemeConfig& config) {
  const Velocities v = velocities(s, g, params);
  double vmax = 1e-12;
  for (double x : v.u) vmax = std::max(vmax, std::abs(x));
  for (double x : v.w) vmax = std::max(vmax, std::abs(x));
  return std::min(config.dt_max, config.cfl * g.dx() / vmax);
}

State step_u_form(const State& s, const Grid& g, const ModelParams& params,
                  const SchemeConfig& config, double dt, const SourceFn& sources,
                  Field* mass_flux) {
  require_step(s, g, Formulation::u_form, dt);
  const int n = g.n_cells();
  const double r = dt / g.dx();

  const Field u = transported_velocity(s);
  const Field uf = face_mean(u);
  const Field F = donor_flux(s.rho, uf);
  const Field G = donor_flux(s.mom, uf);

  Field rho(n), mom_star(n);
  for (int i = 0; i < n; ++i) {
    rho[i] = s.rho[i] - r * (F[i] - F[left(i, n)]);
    mom_star[i] = s.mom[i] - r * (G[i] - G[left(i, n)]);
  }
  if (sources) {
    for (int i = 0; i < n; ++i) {
      const auto [sr, sm] = sources(g.x(i), s.t);
      rho[i] += dt * sr;
      mom_star[i] += dt * sm;
    }
  }
  check_positive(rho);

  const Field lam_face = face_mean(lambda_visc(s.rho, params));
  Field u_star(n);
  for (int i = 0; i < n; ++i) u_star[i] = mom_star[i] / rho[i];
  const Field u_new = implicit_diffusion(rho, lam_face, dt / (g.dx() * g.dx()), u_star,
                                         config.newton_tol);
  State out;
  out.t = s.t + dt;
  out.formulation = Formulation::u_form;
  out.mom.resize(n);
  for (int i = 0; i < n; ++i) out.mom[i] = rho[i] * u_new[i];
  out.rho = std::move(rho);
  if (mass_flux) *mass_flux = F;
  return out;
}

// Density: donor-cell flux on face w plus backward-Euler diffusion with the
// lagged coefficient d(pi)/d(rho). Momentum: every unit of mass crossing a
// face, advective or diffusive, carries the upwind w. The new w is then a
// convex combination of old values, which keeps int rho w^2 non-increasing.
State step_w_form(const State& s, const Grid& g, const ModelParams& params,
                  const SchemeConfig& config, double dt, const SourceFn& sources,
                  Field* mass_flux) {
  require_step(s, g, Formulation::w_form, dt);
  const int n = g.n_cells();
  const double dx = g.dx();
  const double r = dt / dx;

  const Field w = transported_velocity(s);
  const Field Fa = donor_flux(s.rho, face_mean(w));

  Field rho_star(n);
  for (int i = 0; i < n; ++i) rho_star[i] = s.rho[i] - r * (Fa[i] - Fa[left(i, n)]);
  Field mom_source(n, 0.0);
  if (sources) {
    for (int i = 0; i < n; ++i) {
      const auto [sr, sm] = sources(g.x(i), s.t);
      rho_star[i] += dt * sr;
      mom_source[i] = dt * sm;
    }
  }

  Field D(n);
  for (int i = 0; i < n; ++i) D[i] = potential_slope(s.rho[i], params);
  const Field D_face = face_mean(D);
  const Field rho = implicit_diffusion(Field(n, 1.0), D_face, dt / (dx * dx), rho_star,
                                       config.newton_tol);
  check_positive(rho);

  Field F(n), M(n);
  for (int j = 0; j < n; ++j) {
    const int jr = right(j, n);
    F[j] = Fa[j] - D_face[j] * (rho[jr] - rho[j]) / dx;
    const bool forward = F[j] > 0.0;
    const int up = forward ? j : jr;
    double w_face = w[up];
    if (config.momentum_face == MomentumFace::limited) {
      // Edge value of the upwind cell, w_up + (1/2) k minmod slope, with the
      // weight k = 1 - 2c shrinking as the face Courant number c grows so that
      // the face still dissipates int rho w^2.
      const double c = r * std::abs(F[j]) / s.rho[up];
      const double k = std::max(0.0, 1.0 - 2.0 * c);
      const double slope = forward ? minmod(w[j] - w[left(j, n)], w[jr] - w[j])
                                   : -minmod(w[jr] - w[j], w[right(jr, n)] - w[jr]);
      w_face += 0.5 * k * slope;
    }
    M[j] = F[j] * w_face;
  }
  State out;
  out.t = s.t + dt;
  out.formulation = Formulation::w_form;
  out.mom.resize(n);
  for (int i = 0; i < n; ++i) {
    out.mom[i] = s.mom[i] - r * (M[i] - M[left(i, n)]) + mom_source[i];
  }
  out.rho = rho;
  if (mass_flux) *mass_flux = std::move(F);
  return out;
}

State step(const State& s, const Grid& g, const ModelParams& params,
           const SchemeConfig& config, double dt, const SourceFn& sources,
           Field* mass_flux) {
  return s.formulation == Formulation::u_form
             ? step_u_form(s, g, params, config, dt, sources, mass_flux)
             : step_w_form(s, g, params, config, dt, sources, mass_flux);
}

Field step_W_transport(const Field& W, const Field& u, const Grid& g, double dt) {
  require_on_grid(W, g, "W");
  require_on_grid(u, g, "u");
  const int n = g.n_cells();
  const double r = dt / g.dx();
  double cmax = 0.0;
  for (double v : u) cmax = std::max(cmax, std::abs(v) * r);
  if (cmax > 1.0 + 1e-12) {
    throw PreconditionError("W transport CFL number " + std::to_string(cmax) + " exceeds 1");
  }
  Field out(n);
  for (int i = 0; i < n; ++i) {
    const double c = u[i] * r;
    const double cp = std::max(c, 0.0);
    const double cm = std::max(-c, 0.0);
    out[i] = (1.0 - cp - cm) * W[i] + cp * W[left(i, n)] + cm * W[right(i, n)];
  }
  return out;
}

double step_dissipation(const State& before, const State& after, const Grid& g,
                        const ModelParams& params, double dt) {
  const int n = g.n_cells();
  const Field lam_face = face_mean(lambda_visc(before.rho, params));
  const Field u = velocities(after, g, params).u;
  double s = 0.0;
  for (int j = 0; j < n; ++j) {
    const double du = (u[right(j, n)] - u[j]) / g.dx();
    s += lam_face[j] * du * du;
  }
  return dt * s * g.dx();
}

StepOutcome advance(const State& s, const Grid& g, const ModelParams& params,
                    const SchemeConfig& config, double dt, const SourceFn& sources) {
  int cell = 0;
  for (int h = 0; h <= config.max_halvings; ++h) {
    try {
      StepOutcome out;
      out.state = step(s, g, params, config, dt, sources, &out.mass_flux);
      out.dt = dt;
      out.halvings = h;
      return out;
    } catch (const PositivityError& e) {
      cell = e.cell;
      dt *= 0.5;
    }
  }
  throw VacuumError(s.t, cell, params.gamma);
}

Trajectory run_simulation(const State& init, const Grid& g, const ModelParams& params,
                          const SchemeConfig& config, double t_end,
                          const RunHooks& hooks, const SourceFn& sources) {
  config.validate();
  if (init.formulation != config.formulation) {
    throw PreconditionError("initial state is " + to_string(init.formulation) +
                            " but the scheme is " + to_string(config.formulation));
  }
  if (!(t_end >= init.t)) throw PreconditionError("t_end precedes the initial time");
  require_on_grid(init.rho, g, "rho");
  require_on_grid(init.mom, g, "mom");
  check_positive(init.rho);

  Trajectory traj;
  traj.n_cells = g.n_cells();
  traj.gamma = params.gamma;
  traj.initial = summarize_initial(init, g, params);
  traj.acc = empty_accumulators(g);
  const double mean_rho = traj.initial.mean_rho0;

  auto take_snapshot = [&](const State& s) {
    Snapshot snap{s, record(s, g, params, traj.acc, traj.initial), traj.acc};
    if (hooks.on_snapshot) hooks.on_snapshot(snap);
    traj.snapshots.push_back(std::move(snap));
  };

  State state = init;
  take_snapshot(state);

  const double t0 = init.t;
  long next_snap = 1;
  double limit = config.dt_init;
  while (state.t < t_end) {
    const double target = std::min(t_end, t0 + next_snap * config.snapshot_every);
    const double proposed = std::min(compute_dt(state, g, params, config), limit);
    double dt = proposed;
    bool lands = false;
    if (state.t + dt >= target || target - (state.t + dt) < 1e-3 * dt) {
      dt = target - state.t;
      lands = true;
    }

    StepOutcome out;
    try {
      out = advance(state, g, params, config, dt, sources);
    } catch (const SaturationError& e) {
      throw SaturationError(std::string(e.what()) + " at t = " + std::to_string(state.t) +
                            " (gamma = " + std::to_string(params.gamma) + ")");
    }
    if (out.halvings > 0) {
      lands = false;
      limit = 2.0 * out.dt;
    } else {
      limit = 2.0 * proposed;
    }
    out.state.t = lands ? target : state.t + out.dt;

    accumulate_explicit(traj.acc, state, g, params, mean_rho, out.dt);
    traj.acc.dissipation += step_dissipation(state, out.state, g, params, out.dt);
    for (int j = 0; j < g.n_cells(); ++j) {
      traj.acc.mass_flux_time_integral[j] += out.dt * out.mass_flux[j];
    }
    traj.steps += 1;
    traj.halvings += out.halvings;
    if (hooks.on_step) hooks.on_step(state, out.state);

    state = std::move(out.state);
    if (lands) {
      take_snapshot(state);
      if (target < t_end) ++next_snap;
    }
  }
  traj.final_state = state;
  return traj;
}

}  // namespace congestion
