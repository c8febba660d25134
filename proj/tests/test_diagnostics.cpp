#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "congestion/diagnostics.hpp"
#include "congestion/initial_data.hpp"
#include "congestion/solver.hpp"
#include "congestion/tolerances.hpp"

using namespace congestion;

namespace {

State standard_state(const Grid& g, const ModelParams& p, Formulation f) {
  Field rho(g.n_cells()), w(g.n_cells());
  for (int i = 0; i < g.n_cells(); ++i) {
    rho[i] = 0.8 + 0.1 * std::cos(2.0 * M_PI * g.x(i));
    w[i] = 0.2 * std::sin(2.0 * M_PI * g.x(i));
  }
  return state_from_profile({rho, w}, g, p, f);
}

SchemeConfig scheme(Formulation f) {
  SchemeConfig c;
  c.formulation = f;
  c.cfl = 0.1;
  return c;
}

DiagnosticsRecord record_at_start(const State& s, const Grid& g, const ModelParams& p) {
  return record(s, g, p, empty_accumulators(g), summarize_initial(s, g, p));
}

}  // namespace

TEST(Record, ConstantQuiescentState) {
  const Grid g(32);
  const ModelParams p(10.0);
  const State s = make_state(0.0, Field(32, 0.8), Field(32, 0.0), Formulation::u_form);
  const DiagnosticsRecord r = record_at_start(s, g, p);
  EXPECT_NEAR(r.mass, 0.8, 1e-15);
  EXPECT_EQ(r.ke_u, 0.0);
  EXPECT_EQ(r.ke_w, 0.0);
  EXPECT_EQ(r.W_max, 0.0);
  const double expected = 0.2 * (10.0 / 11.0) * std::pow(0.8, 11.0);
  EXPECT_NEAR(r.switching_residual, expected, 1e-15);
  EXPECT_NEAR(r.switching_residual, 1.562e-2, 1e-5);
  EXPECT_NEAR(r.pi_l1, 10.0 * r.H_total, 1e-15);
}

TEST(Record, PureFunctionOfState) {
  const Grid g(64);
  const ModelParams p(20.0);
  const State s = standard_state(g, p, Formulation::w_form);
  const DiagnosticsRecord a = record_at_start(s, g, p);
  const DiagnosticsRecord b = record_at_start(s, g, p);
  EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
}

TEST(Record, RhoW2TwoRoutes) {
  const ModelParams p(10.0);
  for (int n : {16, 64, 256}) {
    const Grid g(n);
    for (Formulation f : {Formulation::u_form, Formulation::w_form}) {
      const State s = standard_state(g, p, f);
      const DiagnosticsRecord r = record_at_start(s, g, p);
      const Field dw = ddx_central(u_to_w(convert(s, Formulation::u_form, g, p), g, p), g);
      Field q(n);
      for (int i = 0; i < n; ++i) q[i] = dw[i] * dw[i] / s.rho[i];
      EXPECT_NEAR(r.rhoW2, integrate(q, g), 1e-13 * (1.0 + r.rhoW2));
    }
  }
}

TEST(SwitchingResidual, Examples) {
  const Grid g(16);
  for (double gamma : {1.0, 10.0, 300.0}) {
    EXPECT_EQ(switching_residual(Field(16, 1.0), ModelParams(gamma), g), 0.0);
  }
  EXPECT_NEAR(switching_residual(Field(16, 0.8), ModelParams(5.0), g), 4.369e-2, 1e-5);
  double prev = INFINITY;
  for (double gamma : {5.0, 10.0, 20.0, 40.0, 80.0, 160.0}) {
    const double r = switching_residual(Field(16, 0.8), ModelParams(gamma), g);
    EXPECT_LT(r, prev);
    prev = r;
  }
}

TEST(Residuals, ZeroAtStart) {
  const Grid g(128);
  const ModelParams p(20.0);
  const State s = standard_state(g, p, Formulation::w_form);
  const InitialDataSummary init = summarize_initial(s, g, p);
  const Accumulators acc = empty_accumulators(g);
  const DiagnosticsRecord r = record(s, g, p, acc, init);
  EXPECT_EQ(basic_energy_residual(r, init.E1, 0.0), 0.0);
  EXPECT_EQ(r.energy_residual, 0.0);
  EXPECT_EQ(r.H_balance_residual, 0.0);
  EXPECT_EQ(r.rho_p_balance_residual, 0.0);
  EXPECT_EQ(r.lower_bound_margin, 0.0);
  EXPECT_EQ(density_lower_bound(init, 0.0), init.rho0_min);
  const WeightedDissipation wd = weighted_dissipation_report(acc);
  EXPECT_EQ(wd.I_mean, 0.0);
  EXPECT_EQ(wd.I_plain, 0.0);
  EXPECT_EQ(wd.low, 0.0);
  EXPECT_EQ(wd.high, 0.0);
}

TEST(Residuals, ConstantStateStaysAtZero) {
  const Grid g(64);
  const ModelParams p(10.0);
  for (double v : {0.0, 0.4}) {
    const State s = make_state(0.0, Field(64, 0.8), Field(64, v), Formulation::w_form);
    const Trajectory tr = run_simulation(s, g, p, scheme(Formulation::w_form), 0.5);
    for (const Snapshot& snap : tr.snapshots) {
      EXPECT_LE(std::abs(snap.record.energy_residual), 1e-13);
      EXPECT_LE(std::abs(snap.record.H_balance_residual), 1e-13);
      EXPECT_LE(std::abs(snap.record.rho_p_balance_residual), 1e-13);
      EXPECT_LE(std::abs(snap.record.lower_bound_margin), 1e-13);
      EXPECT_EQ(snap.record.W_max, 0.0);
      EXPECT_EQ(snap.record.rhoW2, 0.0);
    }
    const WeightedDissipation wd = weighted_dissipation_report(tr);
    EXPECT_LE(std::abs(wd.I_mean) + std::abs(wd.I_plain), 1e-13);
    EXPECT_TRUE(W_max_principle_check(tr).holds);
    EXPECT_TRUE(rhoW2_conservation_check(tr).holds);
    EXPECT_TRUE(lower_bound_check(tr).holds);
    EXPECT_TRUE(mass_conservation_check(tr).holds);
  }
}

TEST(Residuals, BalanceLawsConvergeFirstOrder) {
  const ModelParams p(10.0);
  double e_energy[2], e_H[2], e_rp[2];
  int k = 0;
  for (int n : {256, 512}) {
    const Grid g(n);
    const Trajectory tr =
        run_simulation(standard_state(g, p, Formulation::w_form), g, p, scheme(Formulation::w_form), 0.5);
    const DiagnosticsRecord& r = tr.snapshots.back().record;
    EXPECT_LE(r.energy_residual, tol::energy_upper);
    EXPECT_GE(r.energy_residual, -tol::energy_lower_rel * tr.initial.E1);
    e_energy[k] = std::abs(r.energy_residual);
    e_H[k] = std::abs(r.H_balance_residual);
    e_rp[k] = std::abs(r.rho_p_balance_residual);
    ++k;
  }
  EXPECT_GE(std::log2(e_energy[0] / e_energy[1]), 0.9);
  EXPECT_GE(std::log2(e_H[0] / e_H[1]), 0.9);
  EXPECT_GE(std::log2(e_rp[0] / e_rp[1]), 0.9);
}

TEST(LowerBound, Formula) {
  InitialDataSummary init;
  init.rho0_min = 0.5;
  init.M0 = 2.0;
  EXPECT_DOUBLE_EQ(density_lower_bound(init, 1.0), 1.0 / (2.0 + 2.0));
  DiagnosticsRecord r;
  r.t = 1.0;
  r.rho_min = 0.3;
  EXPECT_DOUBLE_EQ(lower_bound_margin(r, init), 0.3 - 0.25);
  init.M0 = 0.0;
  EXPECT_DOUBLE_EQ(density_lower_bound(init, 7.0), 0.5);
}

TEST(WCheck, SeriesExamples) {
  const Verdict flat = W_max_principle_check({0.0, 0.0, 0.0}, WSource::transported);
  EXPECT_TRUE(flat.holds);
  EXPECT_DOUBLE_EQ(flat.tolerance, 1e-10);
  EXPECT_TRUE(W_max_principle_check({1.0, 0.9, 0.8}, WSource::transported).holds);
  EXPECT_FALSE(W_max_principle_check({1.0, 1.0 + 1e-9}, WSource::transported).holds);
  // Reconstructed W gets the scheme-error slack of 5e-2 (1 + |W_max(0)|).
  EXPECT_TRUE(W_max_principle_check({1.0, 1.09}, WSource::reconstructed).holds);
  EXPECT_FALSE(W_max_principle_check({1.0, 1.11}, WSource::reconstructed).holds);
}

TEST(WCheck, TransportedSeriesIsExact) {
  const Grid g(64);
  Field W(64), u(64);
  for (int i = 0; i < 64; ++i) {
    W[i] = std::exp(std::sin(2.0 * M_PI * g.x(i)));
    u[i] = std::cos(2.0 * M_PI * g.x(i)) + 0.3;
  }
  std::vector<double> series{*std::max_element(W.begin(), W.end())};
  for (int k = 0; k < 500; ++k) {
    W = step_W_transport(W, u, g, 0.7 * g.dx() / 1.3);
    series.push_back(*std::max_element(W.begin(), W.end()));
  }
  const Verdict v = W_max_principle_check(series, WSource::transported);
  EXPECT_TRUE(v.holds);
  EXPECT_LE(v.worst, 0.0);
}

TEST(WCheck, StandardRunReconstructed) {
  const Grid g(256);
  const ModelParams p(10.0);
  const Trajectory tr =
      run_simulation(standard_state(g, p, Formulation::w_form), g, p, scheme(Formulation::w_form), 0.5);
  EXPECT_TRUE(W_max_principle_check(tr).holds);
  EXPECT_TRUE(rhoW2_conservation_check(tr).holds);
  EXPECT_TRUE(ke_w_monotonicity_check(tr).holds);
  EXPECT_TRUE(lower_bound_check(tr).holds);
}

TEST(Psi, ZeroForCenteredConstantDensityAtStart) {
  const Grid g(32);
  const ModelParams p(10.0);
  const State s = make_state(0.0, Field(32, 0.9), Field(32, 0.0), Formulation::w_form);
  const Trajectory tr = run_simulation(s, g, p, scheme(Formulation::w_form), 0.0);
  const PsiSeries psi = psi_test_function(tr, g);
  ASSERT_EQ(psi.faces.size(), 1u);
  ASSERT_EQ(psi.faces[0].size(), 33u);
  // Zero up to the rounding in the summed mean.
  for (double v : psi.faces[0]) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Psi, ConstantMovingState) {
  const Grid g(32);
  const ModelParams p(10.0);
  const State s = make_state(0.0, Field(32, 0.9), Field(32, 0.5), Formulation::u_form);
  const Trajectory tr = run_simulation(s, g, p, scheme(Formulation::u_form), 0.3);
  const PsiSeries psi = psi_test_function(tr, g);
  for (std::size_t k = 0; k < psi.times.size(); ++k) {
    for (double v : psi.faces[k]) EXPECT_NEAR(v, -0.9 * 0.5 * psi.times[k], 1e-13);
  }
  EXPECT_LE(psi.derivative_error, 1e-12);
  EXPECT_LE(psi.periodicity_error, 1e-12);
}

TEST(Psi, StandardRunIdentities) {
  const Grid g(256);
  const ModelParams p(10.0);
  for (Formulation f : {Formulation::u_form, Formulation::w_form}) {
    const Trajectory tr = run_simulation(standard_state(g, p, f), g, p, scheme(f), 0.5);
    const PsiSeries psi = psi_test_function(tr, g);
    EXPECT_LE(psi.periodicity_error, 1e-12);
    EXPECT_LE(psi.derivative_error, tol::psi_derivative_dx * g.dx());
  }
}

TEST(WeightedDissipation, ConstantVelocityGivesZero) {
  const Grid g(32);
  const ModelParams p(10.0);
  Field rho(32);
  for (int i = 0; i < 32; ++i) rho[i] = 0.8 + 0.05 * std::cos(2.0 * M_PI * g.x(i));
  const State s = make_state(0.0, rho, Field(32, 0.2), Formulation::u_form);
  Accumulators acc = empty_accumulators(g);
  accumulate_explicit(acc, s, g, p, 0.8, 0.01);
  const WeightedDissipation wd = weighted_dissipation_report(acc);
  EXPECT_EQ(wd.I_mean, 0.0);
  EXPECT_EQ(wd.I_plain, 0.0);
  EXPECT_EQ(wd.low + wd.high, 0.0);
}
