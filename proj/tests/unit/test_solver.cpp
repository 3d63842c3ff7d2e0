#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"
#include "diffwave/solver.hpp"

using namespace diffwave;

namespace {
ModelParams params(double kappa, double um, double up) {
  ModelParams p;
  p.kappa = kappa;
  p.u_minus = um;
  p.u_plus = up;
  return p;
}

RunConfig neumann(double up, InitialData init, double t_final) {
  RunConfig c;
  c.params = params(1.0, up, up);
  c.kind = NeumannKind{40.0};
  c.grid = grid_for(c.kind, 0.1);
  c.dt = 0.05;
  c.t_final = t_final;
  c.initial = init;
  return c;
}

RunConfig cauchy(double kappa, double um, double up, double half_width, double t_final) {
  RunConfig c;
  c.params = params(kappa, um, up);
  c.kind = CauchyKind{DiffusionWave(solve_profile_cauchy(c.params), c.params), half_width};
  c.grid = grid_for(c.kind, 0.1);
  c.dt = 0.05;
  c.t_final = t_final;
  c.initial.z0 = GaussianBump{0.01, 0.0, 1.0};
  c.initial.w0 = GaussianBump{-0.01, 0.5, 1.0};
  return c;
}
}  // namespace

TEST(Solver, NeumannConstantStateIsFixedPoint) {
  const RunResult r = run(neumann(0.025, {}, 5.0));
  ASSERT_EQ(r.snapshots.size(), 2u);
  for (double v : r.snapshots.back().u) EXPECT_NEAR(v, 0.025, 1e-15);
  for (double v : r.snapshots.back().rho) EXPECT_NEAR(v, 0.025, 1e-15);
}

TEST(Solver, NeumannKeepsZeroOneSidedSlope) {
  InitialData init;
  init.z0 = GaussianBump{0.01, 0.0, 1.0};
  init.w0 = GaussianBump{0.005, 0.0, 2.0};
  const RunResult r = run(neumann(0.0, init, 5.0));
  const State& s = r.snapshots.back();
  EXPECT_NEAR((-3.0 * s.u[0] + 4.0 * s.u[1] - s.u[2]) / (2.0 * r.grid.dx), 0.0, 1e-10);
  EXPECT_NEAR((-3.0 * s.rho[0] + 4.0 * s.rho[1] - s.rho[2]) / (2.0 * r.grid.dx), 0.0, 1e-10);
}

TEST(Solver, DirichletClampsBoundaryValue) {
  RunConfig c;
  c.params = params(1.0, -0.025, 0.025);
  const double beta = -0.01;
  c.kind = DirichletKind{beta, DiffusionWave(solve_profile_halfline(c.params, beta), c.params),
                         60.0};
  c.grid = grid_for(c.kind, 0.1);
  c.dt = 0.05;
  c.t_final = 4.0;
  c.output_times = {0.0, 1.0, 2.0, 4.0};
  c.initial.z0 = GaussianBump{0.01, 20.0, 2.0};
  const RunResult r = run(c);
  ASSERT_EQ(r.snapshots.size(), 4u);
  for (const State& s : r.snapshots) {
    EXPECT_EQ(s.u[0], beta);
    EXPECT_DOUBLE_EQ(s.rho[0], c.params.darcy(beta));
    EXPECT_NEAR(s.u.back(), 0.025, 1e-12);
  }
}

TEST(Solver, CauchyEndsHoldFarFieldStates) {
  const RunConfig c = cauchy(1.0, -0.025, 0.025, 40.0, 10.0);
  const RunResult r = run(c);
  const State& s = r.snapshots.back();
  EXPECT_EQ(s.u.front(), -0.025);
  EXPECT_EQ(s.u.back(), 0.025);
  EXPECT_DOUBLE_EQ(s.rho.front(), -0.025);
  EXPECT_DOUBLE_EQ(s.rho.back(), 0.025);
  EXPECT_DOUBLE_EQ(s.t, 10.0);
  EXPECT_EQ(r.steps, 200u);
}

TEST(Solver, MassConservedWithFlatFarField) {
  for (double kappa : {0.0, 1.0}) {
    const RunConfig c = cauchy(kappa, 0.0, 0.0, 40.0, 10.0);
    RunConfig dense = c;
    dense.output_times = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
    const RunResult r = run(dense);
    const double m0 = r.stats.front().mass_u;
    EXPECT_GT(m0, 0.0);
    for (const SnapshotStats& st : r.stats) {
      EXPECT_LE(std::abs(st.mass_u - m0), 1e-8 * std::max(1.0, st.t)) << kappa << " " << st.t;
    }
  }
}

TEST(Solver, LinearRunObeysMaximumPrinciple) {
  RunConfig c = cauchy(0.0, 0.0, 0.0, 40.0, 10.0);
  c.initial.w0 = ZeroShape{};
  c.output_times = {0.0, 1.0, 5.0, 10.0};
  const RunResult r = run(c);
  double prev = r.stats.front().max_abs_u;
  for (const SnapshotStats& st : r.stats) {
    EXPECT_LE(st.max_abs_u, prev + 1e-15);
    prev = st.max_abs_u;
  }
  for (double v : r.snapshots.back().u) EXPECT_GE(v, -1e-15);
}

TEST(Solver, ZeroFinalTimeGivesInitialSnapshot) {
  const RunConfig c = cauchy(1.0, -0.025, 0.025, 40.0, 0.0);
  const RunResult r = run(c);
  ASSERT_EQ(r.snapshots.size(), 1u);
  EXPECT_EQ(r.steps, 0u);
  const State s0 = init_state(c);
  EXPECT_EQ(r.snapshots[0].u, s0.u);
}

TEST(Solver, StepMatchesStepper) {
  const RunConfig c = cauchy(1.0, -0.025, 0.025, 40.0, 1.0);
  const State s0 = init_state(c);
  State a = s0;
  Stepper(c).advance(a);
  const State b = step(s0, c);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.rho, b.rho);
}

TEST(Solver, DeterministicRepeatedRuns) {
  RunConfig c = cauchy(1.0, -0.025, 0.025, 40.0, 3.0);
  c.initial.z0 = FilteredNoise(5, 2.0, 0.01, 0.0, 1.5);
  const RunResult a = run(c), b = run(c);
  EXPECT_EQ(a.snapshots.back().u, b.snapshots.back().u);
  EXPECT_EQ(a.snapshots.back().rho, b.snapshots.back().rho);
}

TEST(Solver, ValidationRejectsBadConfigs) {
  RunConfig c = cauchy(1.0, -0.025, 0.025, 40.0, 10.0);
  {
    RunConfig bad = c;
    bad.dt = 0.2;  // dt > dx
    EXPECT_THROW(validate_config(bad), ConfigError);
  }
  {
    RunConfig bad = c;
    bad.output_times = {11.0};
    EXPECT_THROW(validate_config(bad), ConfigError);
  }
  {
    RunConfig bad = cauchy(1.0, -0.025, 0.025, 20.0, 10.0);  // too narrow for T = 10
    EXPECT_THROW(validate_config(bad), ConfigError);
    bad.scheme.enforce_width = false;
    EXPECT_NO_THROW(validate_config(bad));
  }
  {
    RunConfig bad = c;
    bad.params.u_plus = 0.03;  // wave built for other far-field states
    EXPECT_THROW(validate_config(bad), ConfigError);
  }
}

TEST(Solver, CompatibilityConditionsEnforced) {
  InitialData off_center;
  off_center.z0 = GaussianBump{0.01, 1.0, 1.0};
  EXPECT_THROW(init_state(neumann(0.0, off_center, 1.0)), ConfigError);

  RunConfig d;
  d.params = params(1.0, -0.025, 0.025);
  d.kind = DirichletKind{0.0, DiffusionWave(solve_profile_halfline(d.params, 0.0), d.params), 60.0};
  d.grid = grid_for(d.kind, 0.1);
  d.dt = 0.05;
  d.t_final = 1.0;
  d.initial.w0 = GaussianBump{0.01, 0.0, 1.0};
  EXPECT_THROW(init_state(d), ConfigError);
}

TEST(Solver, BlowupKeepsPartialResult) {
  InitialData init;
  init.z0 = GaussianBump{0.01, 0.0, 1.0};
  RunConfig c = neumann(0.0, init, 2.0);
  c.output_times = {0.0, 1.0, 2.0};
  c.scheme.blowup_threshold = 0.005;
  RunResult partial;
  EXPECT_THROW(run(c, &partial), BlowupError);
  ASSERT_EQ(partial.snapshots.size(), 1u);
  EXPECT_EQ(partial.snapshots[0].t, 0.0);
}

TEST(Solver, MaxStableDtReflectsChemicalGradient) {
  RunConfig c = neumann(0.0, {}, 1.0);
  const State flat = init_state(c);
  EXPECT_DOUBLE_EQ(max_stable_dt(c, flat), 0.5 * c.grid.dx);
  c.initial.w0 = GaussianBump{10.0, 0.0, 0.5};
  const State steep = init_state(c);
  EXPECT_LT(max_stable_dt(c, steep), 0.5 * c.grid.dx);
}
