#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"
#include "diffwave/power_law.hpp"
#include "diffwave/stencil.hpp"
#include "diffwave/tridiag.hpp"
#include "oracles.hpp"

using namespace diffwave;

TEST(Tridiagonal, MatchesDenseEliminationAtFifty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 50;
    std::vector<double> lo(n), di(n), up(n), rhs(n);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = i ? u(rng) : 0.0;
      up[i] = i + 1 < n ? u(rng) : 0.0;
      di[i] = 2.2 + u(rng);
      rhs[i] = u(rng);
      dense[i][i] = di[i];
      if (i) dense[i][i - 1] = lo[i];
      if (i + 1 < n) dense[i][i + 1] = up[i];
    }
    const auto x = tridiag_solve(lo, di, up, rhs);
    const auto y = oracle::dense_solve(dense, rhs);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], y[i], 1e-10);
  }
}

TEST(Tridiagonal, FactorizationReusableAcrossRightHandSides) {
  const std::vector<double> lo{0, -1, -1, -1}, di{4, 4, 4, 4}, up{-1, -1, -1, 0};
  const TridiagonalFactorization f(lo, di, up);
  for (double scale : {1.0, -3.0, 1e5}) {
    std::vector<double> rhs{scale, 2 * scale, 0.0, -scale};
    const auto direct = tridiag_solve(lo, di, up, rhs);
    f.solve_in_place(rhs);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(rhs[i], direct[i]);
  }
}

TEST(Tridiagonal, SingularPivotIsReported) {
  const std::vector<double> lo{0, 1}, di{1, 1}, up{1, 0}, rhs{1, 1};
  EXPECT_THROW(tridiag_solve(lo, di, up, rhs), NumericalError);
  EXPECT_THROW(tridiag_solve(std::vector<double>{0}, std::vector<double>{1, 2},
                             std::vector<double>{0, 0}, rhs),
               ConfigError);
}

TEST(Stencil, ExactOnQuadraticsIncludingEnds) {
  const Grid g = build_grid(-1.0, 2.0, 21);
  const Field f = sample(g, [](double x) { return 2.0 * x * x - 3.0 * x + 1.0; });
  const Field d1 = dx1(f, g), d2 = dx2(f, g);
  for (std::size_t i = 0; i < g.n; ++i) {
    EXPECT_NEAR(d1[i], 4.0 * g.x(i) - 3.0, 1e-11);
    EXPECT_NEAR(d2[i], 4.0, 1e-9);
  }
}

TEST(Stencil, OneSidedLeftDerivatives) {
  const double h = 0.01;
  std::vector<double> f;
  for (int i = 0; i < 6; ++i) f.push_back(std::pow(i * h, 3) + i * h);  // x^3 + x
  EXPECT_NEAR(dx1_left(f, h), 1.0, 1e-3);
  EXPECT_NEAR(dx2_left(f, h), 0.0, 1e-6 / h);
  EXPECT_NEAR(dx3_left(f, h), 6.0, 1e-8 / (h * h * h));
  std::vector<double> quartic;
  for (int i = 0; i < 6; ++i) quartic.push_back(std::pow(1.0 + i * h, 4));
  // The five-point stencil is exact up to quartics.
  EXPECT_NEAR(dx3_left(quartic, h), 24.0, 1e-4);
}

TEST(Stencil, SecondOrderConvergence) {
  auto err = [](double h) {
    const Grid g = build_grid(0.0, 1.0, static_cast<std::size_t>(std::lround(1.0 / h)) + 1);
    const Field f = sample(g, [](double x) { return std::sin(3.0 * x); });
    const Field d2 = dx2(f, g);
    double e = 0.0;
    // Interior nodes; the one-sided end rows reach their asymptotic rate later.
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
      e = std::max(e, std::abs(d2[i] + 9.0 * std::sin(3.0 * g.x(i))));
    }
    return e;
  };
  EXPECT_NEAR(std::log2(err(0.02) / err(0.01)), 2.0, 0.15);
}

TEST(Norms, TrapezoidAndLp) {
  const Grid g = build_grid(0.0, std::numbers::pi, 2001);
  const Field s = sample(g, [](double x) { return std::sin(x); });
  EXPECT_NEAR(trapezoid(s, g.dx), 2.0, 1e-6);
  EXPECT_NEAR(l2_norm(s, g), std::sqrt(std::numbers::pi / 2.0), 1e-6);
  EXPECT_NEAR(lp_norm(s, g, 1.0), 2.0, 1e-6);
  EXPECT_NEAR(lp_norm(s, g, std::numeric_limits<double>::infinity()), 1.0, 1e-6);
  EXPECT_DOUBLE_EQ(max_abs(Field{-3.0, 2.0}), 3.0);
}

TEST(Norms, SobolevCombinesDerivatives) {
  const Grid g = build_grid(0.0, 2.0 * std::numbers::pi, 4001);
  const Field s = sample(g, [](double x) { return std::sin(x); });
  const double l2 = std::numbers::pi;  // ||sin||^2 on [0, 2 pi]
  EXPECT_NEAR(sobolev_norm(s, g, 0), std::sqrt(l2), 1e-5);
  EXPECT_NEAR(sobolev_norm(s, g, 1), std::sqrt(2.0 * l2), 1e-5);
  EXPECT_NEAR(sobolev_norm(s, g, 2), std::sqrt(3.0 * l2), 1e-4);
  EXPECT_THROW(sobolev_norm(s, g, 3), ConfigError);
}

TEST(PowerLaw, ExactPowerLawsRecovered) {
  std::vector<double> t;
  for (int i = 0; i < 30; ++i) t.push_back(i * 10.0);
  for (double p : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    std::vector<double> v;
    for (double s : t) v.push_back(3.0 * std::pow(1.0 + s, -p));
    const PowerLawFit f = fit_power_law(t, v);
    EXPECT_NEAR(f.exponent, -p, 1e-10);
    EXPECT_NEAR(f.intercept, std::log(3.0), 1e-9);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
  }
}

TEST(PowerLaw, RejectsBadInput) {
  EXPECT_THROW(fit_power_law(std::vector<double>{1.0}, std::vector<double>{1.0}), NumericalError);
  EXPECT_THROW(fit_power_law(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 0.0}),
               NumericalError);
  EXPECT_THROW(fit_power_law(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 2.0}),
               NumericalError);
}
