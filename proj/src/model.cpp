#include "congestion/model.hpp"

#include <cmath>
#include <string>

#include "congestion/errors.hpp"

namespace congestion {

namespace {

constexpr double kMaxExponent = 700.0;

// rho^k through exp(k ln rho), refusing to overflow.
double guarded_power(double rho, double k) {
  if (!(rho > 0.0)) {
    throw DomainError("density must be positive, got " + std::to_string(rho));
  }
  const double e = k * std::log(rho);
  if (e > kMaxExponent) {
    throw SaturationError("rho^" + std::to_string(k) + " overflows at rho = " +
                          std::to_string(rho));
  }
  return std::exp(e);
}

template <class F>
Field map_field(const Field& rho, F f) {
  Field out(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = f(rho[i]);
  return out;
}

}  // namespace

ModelParams::ModelParams(double gamma) : gamma(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be positive and finite, got " + std::to_string(gamma));
  }
}

double pressure(double rho, const ModelParams& params) {
  return guarded_power(rho, params.gamma);
}

double lambda_visc(double rho, const ModelParams& params) {
  return params.gamma * guarded_power(rho, params.gamma + 1.0);
}

double potential_pi(double rho, const ModelParams& params) {
  return params.gamma / (params.gamma + 1.0) * guarded_power(rho, params.gamma + 1.0);
}

double enthalpy_H(double rho, const ModelParams& params) {
  return guarded_power(rho, params.gamma + 1.0) / (params.gamma + 1.0);
}

double potential_slope(double rho, const ModelParams& params) {
  return params.gamma * guarded_power(rho, params.gamma);
}

Field pressure(const Field& rho, const ModelParams& params) {
  return map_field(rho, [&](double r) { return pressure(r, params); });
}

Field lambda_visc(const Field& rho, const ModelParams& params) {
  return map_field(rho, [&](double r) { return lambda_visc(r, params); });
}

Field potential_pi(const Field& rho, const ModelParams& params) {
  return map_field(rho, [&](double r) { return potential_pi(r, params); });
}

Field enthalpy_H(const Field& rho, const ModelParams& params) {
  return map_field(rho, [&](double r) { return enthalpy_H(r, params); });
}

std::string to_string(Formulation f) {
  return f == Formulation::u_form ? "u_form" : "w_form";
}

Formulation parse_formulation(const std::string& s) {
  if (s == "u_form") return Formulation::u_form;
  if (s == "w_form") return Formulation::w_form;
  throw ConfigError("unknown formulation '" + s + "' (expected u_form or w_form)");
}

Field transported_velocity(const State& s) {
  if (s.rho.size() != s.mom.size()) {
    throw DimensionError("state density and momentum differ in length");
  }
  Field v(s.rho.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(s.rho[i] > 0.0)) {
      throw DomainError("density must be positive in cell " + std::to_string(i));
    }
    v[i] = s.mom[i] / s.rho[i];
  }
  return v;
}

Field u_to_w(const State& s, const Grid& g, const ModelParams& params) {
  if (s.formulation != Formulation::u_form) {
    throw PreconditionError("u_to_w needs a u_form state");
  }
  require_on_grid(s.rho, g, "rho");
  Field w = transported_velocity(s);
  const Field dp = ddx_central(pressure(s.rho, params), g);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += dp[i];
  return w;
}

Field w_to_u(const State& s, const Grid& g, const ModelParams& params) {
  if (s.formulation != Formulation::w_form) {
    throw PreconditionError("w_to_u needs a w_form state");
  }
  require_on_grid(s.rho, g, "rho");
  Field u = transported_velocity(s);
  const Field dp = ddx_central(pressure(s.rho, params), g);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] -= dp[i];
  return u;
}

Velocities velocities(const State& s, const Grid& g, const ModelParams& params) {
  if (s.formulation == Formulation::u_form) {
    return {transported_velocity(s), u_to_w(s, g, params)};
  }
  return {w_to_u(s, g, params), transported_velocity(s)};
}

State make_state(double t, Field rho, const Field& velocity, Formulation f) {
  if (rho.size() != velocity.size()) {
    throw DimensionError("density and velocity differ in length");
  }
  State s;
  s.t = t;
  s.formulation = f;
  s.mom.resize(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) s.mom[i] = rho[i] * velocity[i];
  s.rho = std::move(rho);
  return s;
}

State convert(const State& s, Formulation target, const Grid& g,
              const ModelParams& params) {
  if (s.formulation == target) return s;
  const Velocities v = velocities(s, g, params);
  return make_state(s.t, s.rho, target == Formulation::u_form ? v.u : v.w, target);
}

Field compute_W(const Field& rho, const Field& w, const Grid& g) {
  require_on_grid(rho, g, "rho");
  Field W = ddx_central(w, g);
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (!(rho[i] > 0.0)) {
      throw DomainError("density must be positive in cell " + std::to_string(i));
    }
    W[i] /= rho[i];
  }
  return W;
}

Field compute_V(const Field& rho, const Field& u, const Grid& g,
                const ModelParams& params) {
  require_on_grid(rho, g, "rho");
  Field V = ddx_central(u, g);
  for (std::size_t i = 0; i < V.size(); ++i) V[i] *= lambda_visc(rho[i], params);
  return V;
}

DerivedFields derive_fields(const State& s, const Grid& g, const ModelParams& params) {
  DerivedFields d;
  d.p = pressure(s.rho, params);
  d.lambda = lambda_visc(s.rho, params);
  d.pi = potential_pi(s.rho, params);
  d.H = enthalpy_H(s.rho, params);
  Velocities v = velocities(s, g, params);
  d.u = std::move(v.u);
  d.w = std::move(v.w);
  d.W = compute_W(s.rho, d.w, g);
  d.V = compute_V(s.rho, d.u, g, params);
  return d;
}

}  // namespace congestion
