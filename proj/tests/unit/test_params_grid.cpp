#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "diffwave/error.hpp"
#include "diffwave/grid.hpp"
#include "diffwave/params.hpp"

using namespace diffwave;

TEST(ModelParams, DiffusivityAndDarcy) {
  ModelParams p;
  p.a = 2.0;
  p.kappa = 3.0;
  p.mu = 0.5;
  p.lambda = 1.5;
  EXPECT_DOUBLE_EQ(p.coupling(), 1.0);
  EXPECT_DOUBLE_EQ(p.diffusivity(0.5), 1.5);
  EXPECT_DOUBLE_EQ(p.darcy(3.0), 1.0);
  EXPECT_DOUBLE_EQ(p.degeneracy_bound(), 2.0);
}

TEST(ModelParams, WaveStrength) {
  ModelParams p;
  p.u_minus = -0.025;
  p.u_plus = 0.025;
  EXPECT_NEAR(p.wave_strength(), 0.1, 1e-15);
}

TEST(ModelParams, ZeroKappaHasNoDegeneracy) {
  ModelParams p;
  p.kappa = 0.0;
  p.u_plus = 1e6;
  EXPECT_TRUE(std::isinf(p.degeneracy_bound()));
  EXPECT_NO_THROW(p.validate());
}

TEST(ModelParams, RejectsDegenerateStates) {
  ModelParams p;
  p.u_plus = 1.0;  // |u+| == a lambda / (kappa mu)
  try {
    p.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("u_plus"), std::string::npos);
  }
}

TEST(ModelParams, RejectsNonPositiveCoefficients) {
  for (double ModelParams::*field : {&ModelParams::a, &ModelParams::b, &ModelParams::lambda,
                                     &ModelParams::mu}) {
    ModelParams p;
    p.*field = 0.0;
    EXPECT_THROW(p.validate(), ConfigError);
  }
  ModelParams p;
  p.kappa = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p.kappa = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Grid, BuildsRequestedSpan) {
  const Grid g = build_grid(-2.0, 4.0, 41);
  EXPECT_DOUBLE_EQ(g.dx, 0.1);
  EXPECT_DOUBLE_EQ(g.x(0), -2.0);
  EXPECT_NEAR(g.x_last(), 2.0, 1e-14);
  EXPECT_EQ(g.nodes().size(), 41u);
}

TEST(Grid, SpacingNeverExceedsRequest) {
  for (double dx : {0.1, 0.07, 0.05, 0.03}) {
    const Grid g = build_grid_with_spacing(0.0, 170.0, dx);
    EXPECT_LE(g.dx, dx * (1.0 + 1e-12));
    EXPECT_NEAR(g.length(), 170.0, 1e-9);
  }
  EXPECT_EQ(build_grid_with_spacing(0.0, 2.0, 0.1).n, 21u);
}

TEST(Grid, RejectsTinyOrEmptyGrids) {
  EXPECT_THROW(build_grid(0.0, 1.0, 2), ConfigError);
  EXPECT_THROW(build_grid(0.0, 0.0, 10), ConfigError);
  EXPECT_THROW(build_grid_with_spacing(0.0, 1.0, -0.1), ConfigError);
}

TEST(Grid, AlignmentAndFiniteness) {
  const Grid g = build_grid(0.0, 1.0, 5);
  EXPECT_THROW(require_aligned(Field(4, 0.0), g), ConfigError);
  EXPECT_NO_THROW(require_aligned(Field(5, 0.0), g));
  Field f(5, 1.0);
  EXPECT_TRUE(all_finite(f));
  f[2] = std::numeric_limits<double>::infinity();
  EXPECT_FALSE(all_finite(f));
}
