#include "congestion/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "congestion/errors.hpp"

namespace congestion {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double profile(Wave::Shape s, double th) { return s == Wave::Shape::cos ? std::cos(th) : std::sin(th); }
double profile_d(Wave::Shape s, double th) { return s == Wave::Shape::cos ? -std::sin(th) : std::cos(th); }

}  // namespace

double Wave::value(double x, double t) const {
  return mean + amp * profile(this->shape, kTwoPi * (x - speed * t));
}

double Wave::dx(double x, double t) const {
  return amp * kTwoPi * profile_d(this->shape, kTwoPi * (x - speed * t));
}

double Wave::dxx(double x, double t) const {
  return -amp * kTwoPi * kTwoPi * profile(this->shape, kTwoPi * (x - speed * t));
}

double Wave::dt(double x, double t) const { return -speed * dx(x, t); }

const std::vector<ManufacturedCase>& shipped_mms_cases() {
  static const std::vector<ManufacturedCase> cases = [] {
    std::vector<ManufacturedCase> out;
    const Wave still{0.8, 0.0, Wave::Shape::cos, 1.0};
    const Wave drift{0.1, 0.0, Wave::Shape::sin, 1.0};
    const Wave density{0.8, 0.05, Wave::Shape::cos, 1.0};
    const Wave velocity{0.0, 0.1, Wave::Shape::sin, 1.0};
    for (Formulation f : {Formulation::u_form, Formulation::w_form}) {
      const std::string tag = f == Formulation::u_form ? "_u" : "_w";
      out.push_back({"constant" + tag, f, 4.0, 0.25, still, drift});
      out.push_back({"advected_velocity" + tag, f, 4.0, 0.25, still, velocity});
      out.push_back({"traveling_wave" + tag, f, 4.0, 0.25, density, velocity});
    }
    return out;
  }();
  return cases;
}

const std::vector<int>& mms_resolutions() {
  static const std::vector<int> ladder{256, 512, 1024};
  return ladder;
}

const ManufacturedCase& find_mms_case(const std::string& name) {
  for (const ManufacturedCase& c : shipped_mms_cases()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown manufactured case '" + name + "'");
}

std::pair<double, double> mms_sources(const ManufacturedCase& c, double x, double t) {
  const double g = c.gamma;
  const double r = c.density.value(x, t);
  const double r_t = c.density.dt(x, t);
  const double r_x = c.density.dx(x, t);
  const double v = c.velocity.value(x, t);
  const double v_t = c.velocity.dt(x, t);
  const double v_x = c.velocity.dx(x, t);

  // Transport part shared by both formulations.
  const double s_rho = r_t + r_x * v + r * v_x;
  const double s_mom = r_t * v + r * v_t + r_x * v * v + 2.0 * r * v * v_x;

  if (c.formulation == Formulation::u_form) {
    // d/dx (lambda(rho) u_x), lambda = g rho^(g+1).
    const double lam = g * std::pow(r, g + 1.0);
    const double lam_r = g * (g + 1.0) * std::pow(r, g);
    const double visc = lam_r * r_x * v_x + lam * c.velocity.dxx(x, t);
    return {s_rho, s_mom - visc};
  }
  // pi'(rho) = g rho^g, pi''(rho) = g^2 rho^(g-1).
  const double pi_r = g * std::pow(r, g);
  const double pi_rr = g * g * std::pow(r, g - 1.0);
  const double pi_x = pi_r * r_x;
  const double pi_xx = pi_rr * r_x * r_x + pi_r * c.density.dxx(x, t);
  return {s_rho - pi_xx, s_mom - (v_x * pi_x + v * pi_xx)};
}

State mms_exact_state(const ManufacturedCase& c, const Grid& g, double t) {
  Field rho(g.n_cells()), v(g.n_cells());
  for (int i = 0; i < g.n_cells(); ++i) {
    rho[i] = c.density.value(g.x(i), t);
    v[i] = c.velocity.value(g.x(i), t);
  }
  return make_state(t, std::move(rho), v, c.formulation);
}

double observed_order(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

namespace {

void check_resolutions(const std::vector<int>& res) {
  if (res.size() < 3) throw PreconditionError("convergence study needs >= 3 resolutions");
  for (std::size_t k = 1; k < res.size(); ++k) {
    if (res[k] != 2 * res[k - 1]) throw PreconditionError("resolutions must double");
  }
}

void add_errors(ConvergenceStudy& st, const State& got, const State& ref, const Grid& g) {
  Field er(g.n_cells()), em(g.n_cells());
  for (int i = 0; i < g.n_cells(); ++i) {
    er[i] = got.rho[i] - ref.rho[i];
    em[i] = got.mom[i] - ref.mom[i];
  }
  st.err_rho_l1.push_back(norm(er, g, NormKind::l1));
  st.err_rho_linf.push_back(norm(er, g, NormKind::linf));
  st.err_mom_l1.push_back(norm(em, g, NormKind::l1));
  st.err_mom_linf.push_back(norm(em, g, NormKind::linf));
}

void finish(ConvergenceStudy& st) {
  st.exact = true;
  for (std::size_t k = 0; k < st.err_rho_l1.size(); ++k) {
    if (st.err_rho_linf[k] > 1e-12 || st.err_mom_linf[k] > 1e-12) st.exact = false;
  }
  for (std::size_t k = 0; k + 1 < st.err_rho_l1.size(); ++k) {
    st.order_rho_l1.push_back(observed_order(st.err_rho_l1[k], st.err_rho_l1[k + 1]));
    st.order_mom_l1.push_back(observed_order(st.err_mom_l1[k], st.err_mom_l1[k + 1]));
  }
}

}  // namespace

ConvergenceStudy convergence_study(const ManufacturedCase& c, const std::vector<int>& resolutions,
                                   const SchemeConfig& config) {
  check_resolutions(resolutions);
  SchemeConfig cfg = config;
  cfg.formulation = c.formulation;
  cfg.snapshot_every = c.t_end;
  const ModelParams params(c.gamma);
  const SourceFn sources = [&c](double x, double t) { return mms_sources(c, x, t); };

  ConvergenceStudy st;
  st.resolutions = resolutions;
  for (int n : resolutions) {
    const Grid g(n);
    Trajectory traj;
    try {
      traj = run_simulation(mms_exact_state(c, g, 0.0), g, params, cfg, c.t_end, {}, sources);
    } catch (const std::exception& e) {
      throw NumericalError("convergence study failed at n = " + std::to_string(n) + ": " +
                           e.what());
    }
    add_errors(st, traj.final_state, mms_exact_state(c, g, c.t_end), g);
  }
  finish(st);
  return st;
}

ConvergenceStudy self_convergence_study(const InitialStateBuilder& build,
                                        const ModelParams& params, const SchemeConfig& config,
                                        double t_end, const std::vector<int>& resolutions) {
  check_resolutions(resolutions);
  SchemeConfig cfg = config;
  cfg.snapshot_every = t_end;
  ConvergenceStudy st;
  st.resolutions = resolutions;
  for (int n : resolutions) {
    const Grid g(n), fine(4 * n);
    try {
      const Trajectory coarse = run_simulation(build(g), g, params, cfg, t_end);
      const Trajectory ref = run_simulation(build(fine), fine, params, cfg, t_end);
      State injected = coarse.final_state;
      for (int i = 0; i < n; ++i) {
        double r = 0.0, m = 0.0;
        for (int k = 0; k < 4; ++k) {
          r += ref.final_state.rho[4 * i + k];
          m += ref.final_state.mom[4 * i + k];
        }
        injected.rho[i] = 0.25 * r;
        injected.mom[i] = 0.25 * m;
      }
      add_errors(st, coarse.final_state, injected, g);
    } catch (const std::exception& e) {
      throw NumericalError("self-convergence study failed at n = " + std::to_string(n) + ": " +
                           e.what());
    }
  }
  finish(st);
  return st;
}

std::vector<double> dense_solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (a[piv][col] == 0.0) throw NumericalError("singular dense system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

State dense_step_oracle(const State& s, const Grid& g, const ModelParams& params, double dt,
                        MomentumFace face) {
  const int n = static_cast<int>(s.rho.size());
  if (n > 8) throw PreconditionError("dense oracle is limited to 8 cells");
  const double dx = g.dx();
  const double gam = params.gamma;
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = s.mom[i] / s.rho[i];

  // Donor-cell flux of q through the face between cells a and b (b right of a).
  auto flux = [&](const std::vector<double>& q, int a, int b) {
    const double vf = 0.5 * (v[a] + v[b]);
    return vf > 0.0 ? vf * q[a] : vf * q[b];
  };

  State out = s;
  out.t = s.t + dt;
  Matrix A(n, std::vector<double>(n, 0.0));
  std::vector<double> rho_adv(n), mom_adv(n);
  for (int i = 0; i < n; ++i) {
    const int l = (i + n - 1) % n, r = (i + 1) % n;
    rho_adv[i] = s.rho[i] - dt / dx * (flux(s.rho, i, r) - flux(s.rho, l, i));
    mom_adv[i] = s.mom[i] - dt / dx * (flux(s.mom, i, r) - flux(s.mom, l, i));
  }

  if (s.formulation == Formulation::u_form) {
    for (int i = 0; i < n; ++i) {
      const int l = (i + n - 1) % n, r = (i + 1) % n;
      const double lam_i = gam * std::pow(s.rho[i], gam + 1.0);
      const double cr = 0.5 * (lam_i + gam * std::pow(s.rho[r], gam + 1.0)) * dt / (dx * dx);
      const double cl = 0.5 * (lam_i + gam * std::pow(s.rho[l], gam + 1.0)) * dt / (dx * dx);
      A[i][i] += rho_adv[i] + cr + cl;
      A[i][r] -= cr;
      A[i][l] -= cl;
    }
    const std::vector<double> u = dense_solve(A, mom_adv);
    for (int i = 0; i < n; ++i) {
      out.rho[i] = rho_adv[i];
      out.mom[i] = rho_adv[i] * u[i];
    }
    return out;
  }

  std::vector<double> coef(n);  // face i | i+1
  for (int i = 0; i < n; ++i) {
    const int r = (i + 1) % n;
    coef[i] = 0.5 * (gam * std::pow(s.rho[i], gam) + gam * std::pow(s.rho[r], gam));
  }
  for (int i = 0; i < n; ++i) {
    const int l = (i + n - 1) % n, r = (i + 1) % n;
    const double cr = coef[i] * dt / (dx * dx), cl = coef[l] * dt / (dx * dx);
    A[i][i] += 1.0 + cr + cl;
    A[i][r] -= cr;
    A[i][l] -= cl;
  }
  const std::vector<double> rho = dense_solve(A, rho_adv);
  for (int i = 0; i < n; ++i) {
    const int l = (i + n - 1) % n, r = (i + 1) % n;
    auto total = [&](int a, int b) {
      return flux(s.rho, a, b) - coef[a] * (rho[b] - rho[a]) / dx;
    };
    // Upwind cell c, the cell behind it d, the cell across the face e.
    auto carried = [&](int a, int b, double f) {
      const int c = f > 0.0 ? a : b;
      const int d = f > 0.0 ? (a + n - 1) % n : (b + 1) % n;
      const int e = f > 0.0 ? b : a;
      if (face == MomentumFace::upwind) return v[c];
      const double behind = v[c] - v[d], across = v[e] - v[c];
      const double lim = behind * across > 0.0
                             ? std::copysign(std::min(std::abs(behind), std::abs(across)), behind)
                             : 0.0;
      const double courant = dt / dx * std::abs(f) / s.rho[c];
      return v[c] + 0.5 * std::max(0.0, 1.0 - 2.0 * courant) * lim;
    };
    const double fr = total(i, r), fl = total(l, i);
    const double mr = fr * carried(i, r, fr);
    const double ml = fl * carried(l, i, fl);
    out.rho[i] = rho[i];
    out.mom[i] = s.mom[i] - dt / dx * (mr - ml);
  }
  return out;
}

}  // namespace congestion
