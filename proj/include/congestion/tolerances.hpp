#pragma once

// Single table of verdict tolerances shared by diagnostics, the CLI and the
// acceptance suite.
namespace congestion::tol {

// Quantities the scheme preserves exactly (up to rounding).
inline constexpr double exact_conservation = 1e-12;
// Relative step-to-step increase allowed for int rho w^2.
inline constexpr double ke_w_monotone = 1e-8;
// Upper end of the basic-energy residual (absolute).
inline constexpr double energy_upper = 1e-8;
// Lower end of the basic-energy residual, relative to E1.
inline constexpr double energy_lower_rel = 5e-2;
// Slack on W_max and int rho W^2 when W is reconstructed from the state.
inline constexpr double reconstruction = 5e-2;
// Slack on W_max when W is carried by the monotone transport step.
inline constexpr double transported_W = 1e-10;
// Per-step floating point slack of the monotone W transport.
inline constexpr double transport_roundoff = 1e-14;
// Lower bound slack of the per-run verdict, relative to min rho0.
inline constexpr double lower_bound_rel = 1e-2;
// Absolute lower bound slack of the gamma-ladder acceptance check.
inline constexpr double lower_bound_abs = 8e-3;
// Minimum observed order for quantities that vanish under refinement.
inline constexpr double refinement_order = 0.9;
// Psi derivative check, in units of dx.
inline constexpr double psi_derivative_dx = 5.0;

}  // namespace congestion::tol
