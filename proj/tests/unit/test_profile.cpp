#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "diffwave/error.hpp"
#include "diffwave/profile.hpp"
#include "oracles.hpp"

using namespace diffwave;

namespace {
ModelParams linear(double um, double up) {
  ModelParams p;
  p.kappa = 0.0;
  p.u_minus = um;
  p.u_plus = up;
  return p;
}
ModelParams nonlinear(double um, double up) {
  ModelParams p;
  p.u_minus = um;
  p.u_plus = up;
  return p;
}
}  // namespace

TEST(ProfileOde, LinearLimitFollowsErf) {
  const ModelParams p = linear(-0.05, 0.05);
  const double slope = oracle::erf_profile_slope(1.0, -0.05, 0.05, 0.0);
  const ProfileTrajectory tr = integrate_profile_ode(p, 0.0, slope, -8.0, 8.0, 0.01);
  ASSERT_FALSE(tr.halted_left || tr.halted_right);
  for (std::size_t i = 0; i < tr.xi.size(); ++i) {
    EXPECT_NEAR(tr.phi[i], oracle::erf_profile(1.0, -0.05, 0.05, tr.xi[i]), 1e-10);
    EXPECT_NEAR(tr.dphi[i], oracle::erf_profile_slope(1.0, -0.05, 0.05, tr.xi[i]), 1e-10);
  }
}

TEST(ProfileOde, HaltsWhereDiffusivityVanishes) {
  const ModelParams p = nonlinear(0.0, 0.0);  // f(phi) = 1 - phi
  const ProfileTrajectory tr = integrate_profile_ode(p, 0.9, 5.0, -1.0, 5.0, 0.001);
  EXPECT_TRUE(tr.halted_right);
  EXPECT_FALSE(tr.halted_left);
  for (double v : tr.phi) EXPECT_GT(p.diffusivity(v), 0.0);
  EXPECT_THROW(integrate_profile_ode(p, 1.0, 0.0, -1.0, 1.0, 0.01), ConfigError);
  EXPECT_THROW(integrate_profile_ode(p, 0.0, 0.0, -1.0, 1.0, 0.0), ConfigError);
}

TEST(ProfileCauchy, LinearAnchorMatchesErf) {
  const Profile prof = solve_profile_cauchy(linear(-0.05, 0.05));
  EXPECT_NEAR(prof.anchor.slope0, 0.1 / (2.0 * std::sqrt(std::numbers::pi)), 1e-4);
  EXPECT_NEAR(prof.anchor.slope0, 0.028209, 1e-6);
  EXPECT_NEAR(prof.anchor.phi0, 0.0, 1e-8);
  for (std::size_t i = 0; i < prof.phi.size(); ++i) {
    EXPECT_NEAR(prof.phi[i], oracle::erf_profile(1.0, -0.05, 0.05, prof.xi_grid.x(i)), 1e-8);
  }
}

TEST(ProfileCauchy, NonlinearProfileShape) {
  const ModelParams p = nonlinear(-0.05, 0.05);
  const Profile prof = solve_profile_cauchy(p);
  for (std::size_t i = 1; i < prof.phi.size(); ++i) EXPECT_GT(prof.phi[i], prof.phi[i - 1]);
  for (double v : prof.phi) {
    EXPECT_GE(v, p.u_minus);
    EXPECT_LE(v, p.u_plus);
  }
  EXPECT_LE(profile_ode_residual(p, prof), 1e-6);
  EXPECT_LE(prof.left_residual, 1e-8);
  EXPECT_LE(prof.right_residual, 1e-8);
  const Envelope env = fit_envelope(prof);
  EXPECT_GT(env.r2, 0.99);
  EXPECT_GT(env.c0, 0.0);
}

TEST(ProfileCauchy, DecreasingProfileAndLinearSymmetry) {
  const Profile down = solve_profile_cauchy(linear(0.04, -0.02));
  for (std::size_t i = 1; i < down.phi.size(); ++i) EXPECT_LT(down.phi[i], down.phi[i - 1]);
  // For linear diffusion phi - midpoint is odd in xi.
  const std::size_t n = down.phi.size();
  for (std::size_t i = 0; i < n / 2; i += 50) {
    EXPECT_NEAR(down.phi[i] - 0.01, -(down.phi[n - 1 - i] - 0.01), 1e-8);
  }
}

TEST(ProfileCauchy, NonlinearityBreaksSymmetry) {
  // The linear profile passes through the midpoint at xi = 0; this one does not.
  const Profile prof = solve_profile_cauchy(nonlinear(-0.3, 0.3));
  EXPECT_GT(std::abs(prof.anchor.phi0), 1e-3);
  EXPECT_LE(profile_ode_residual(nonlinear(-0.3, 0.3), prof), 1e-6);
}

TEST(ProfileCauchy, EqualStatesGiveConstantProfile) {
  const Profile prof = solve_profile_cauchy(nonlinear(0.02, 0.02));
  EXPECT_TRUE(prof.is_constant());
  for (double v : prof.phi) EXPECT_EQ(v, 0.02);
  EXPECT_THROW(fit_envelope(prof), ConfigError);
}

TEST(ProfileCauchy, RejectsBadInputs) {
  EXPECT_THROW(solve_profile_cauchy(nonlinear(-0.05, 1.5)), ConfigError);
  EXPECT_THROW(solve_profile_cauchy(nonlinear(-0.05, 0.05), 0.0), ConfigError);
  EXPECT_THROW(solve_profile_cauchy(nonlinear(-0.05, 0.05), 0.1), ConfigError);
}

TEST(ProfileCauchy, FarFieldExtent) {
  const ModelParams p = nonlinear(-0.05, 0.05);
  const double f_max = 1.0 + 0.05;
  EXPECT_NEAR(profile_xi_max(p, 1e-8), std::sqrt(4.0 * f_max * std::log(10.0 / 1e-8)), 1e-12);
  const Profile prof = solve_profile_cauchy(p);
  EXPECT_NEAR(prof.xi_max(), profile_xi_max(p, 1e-8), 1e-9);
  EXPECT_NEAR(prof.xi_min(), -prof.xi_max(), 1e-9);
}

TEST(ProfileHalfLine, ConnectsBetaToFarState) {
  const ModelParams p = nonlinear(-0.025, 0.025);
  const Profile prof = solve_profile_halfline(p, 0.0);
  ASSERT_TRUE(prof.beta.has_value());
  EXPECT_EQ(prof.phi.front(), 0.0);
  EXPECT_EQ(prof.left_state(), 0.0);
  EXPECT_EQ(prof.xi_min(), 0.0);
  EXPECT_NEAR(prof.phi.back(), 0.025, 1e-8);
  for (std::size_t i = 1; i < prof.phi.size(); ++i) EXPECT_GT(prof.phi[i], prof.phi[i - 1]);
  EXPECT_LE(profile_ode_residual(p, prof), 1e-6);
}

TEST(ProfileHalfLine, LinearMatchesShiftedErf) {
  // phi = beta + (u+ - beta) erf(xi / 2) for linear diffusion on the half line.
  const ModelParams p = linear(-0.05, 0.05);
  const Profile prof = solve_profile_halfline(p, -0.05);
  for (std::size_t i = 0; i < prof.phi.size(); i += 37) {
    const double xi = prof.xi_grid.x(i);
    EXPECT_NEAR(prof.phi[i], -0.05 + 0.1 * std::erf(xi / 2.0), 1e-8);
  }
}

TEST(ProfileHalfLine, BetaRangeAndConstantCase) {
  const ModelParams p = nonlinear(-0.025, 0.025);
  EXPECT_THROW(solve_profile_halfline(p, 0.03), ConfigError);
  EXPECT_THROW(solve_profile_halfline(p, -0.03), ConfigError);
  const Profile flat = solve_profile_halfline(p, 0.025);
  EXPECT_TRUE(flat.is_constant());
  EXPECT_EQ(flat.left_state(), 0.025);
}
