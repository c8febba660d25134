#pragma once

#include <string>

#include "congestion/grid.hpp"

namespace congestion {

struct ModelParams {
  double gamma;

  explicit ModelParams(double gamma);
};

// All powers go through exp(k ln rho) with an explicit overflow guard.
double pressure(double rho, const ModelParams& params);      // rho^gamma
double lambda_visc(double rho, const ModelParams& params);   // gamma rho^(gamma+1)
double potential_pi(double rho, const ModelParams& params);  // gamma/(gamma+1) rho^(gamma+1)
double enthalpy_H(double rho, const ModelParams& params);    // rho^(gamma+1)/(gamma+1)
// d(pi)/d(rho) = gamma rho^gamma, the density diffusivity of the w-form.
double potential_slope(double rho, const ModelParams& params);

Field pressure(const Field& rho, const ModelParams& params);
Field lambda_visc(const Field& rho, const ModelParams& params);
Field potential_pi(const Field& rho, const ModelParams& params);
Field enthalpy_H(const Field& rho, const ModelParams& params);

enum class Formulation { u_form, w_form };

std::string to_string(Formulation f);
Formulation parse_formulation(const std::string& s);

// mom is rho*u for the u-form and rho*w for the w-form.
struct State {
  double t = 0.0;
  Field rho;
  Field mom;
  Formulation formulation = Formulation::w_form;
};

struct Velocities {
  Field u;
  Field w;
};

struct DerivedFields {
  Field p, lambda, pi, H, u, w, W, V;
};

// mom / rho, i.e. u or w depending on the formulation.
Field transported_velocity(const State& s);

Field u_to_w(const State& s, const Grid& g, const ModelParams& params);
Field w_to_u(const State& s, const Grid& g, const ModelParams& params);
Velocities velocities(const State& s, const Grid& g, const ModelParams& params);

// Builds a state from density and one velocity (u for u_form, w for w_form).
State make_state(double t, Field rho, const Field& velocity, Formulation f);

// Re-expresses a state in the other formulation (same rho, same u and w).
State convert(const State& s, Formulation target, const Grid& g,
              const ModelParams& params);

Field compute_W(const Field& rho, const Field& w, const Grid& g);
Field compute_V(const Field& rho, const Field& u, const Grid& g,
                const ModelParams& params);
DerivedFields derive_fields(const State& s, const Grid& g, const ModelParams& params);

}  // namespace congestion
