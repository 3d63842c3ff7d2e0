#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"
#include "diffwave/perturbation.hpp"
#include "oracles.hpp"

using namespace diffwave;

namespace {
ModelParams params(double um, double up) {
  ModelParams p;
  p.u_minus = um;
  p.u_plus = up;
  return p;
}

// w = e^{-t} sin x, z = 0 on [0, 2 pi].
PerturbationHistory synthetic() {
  PerturbationHistory h;
  h.grid = build_grid(0.0, 2.0 * std::numbers::pi, 2001);
  h.half_line = true;
  for (int m = 0; m <= 200; ++m) {
    const double t = 0.01 * m;
    h.t.push_back(t);
    h.w.push_back(sample(h.grid, [t](double x) { return std::exp(-t) * std::sin(x); }));
    h.z.push_back(Field(h.grid.n, 0.0));
  }
  return h;
}
}  // namespace

TEST(Perturbation, RecoversInitialBump) {
  RunConfig c;
  c.params = params(-0.025, 0.025);
  c.kind = CauchyKind{DiffusionWave(solve_profile_cauchy(c.params), c.params), 40.0};
  c.grid = grid_for(c.kind, 0.1);
  c.dt = 0.05;
  c.t_final = 1.0;
  const GaussianBump bump{0.01, 2.0, 1.0};
  c.initial.z0 = bump;
  const State s0 = init_state(c);
  const auto [w, z] = perturbation(s0, c.grid, c.kind, c.params);
  for (std::size_t i = 0; i < c.grid.n; ++i) {
    EXPECT_NEAR(z[i], shape_value(bump, c.grid.x(i)), 1e-8);
    EXPECT_NEAR(w[i], 0.0, 1e-8);
  }
}

TEST(Perturbation, UnperturbedNeumannRunIsZero) {
  RunConfig c;
  c.params = params(0.01, 0.01);
  c.kind = NeumannKind{20.0};
  c.grid = grid_for(c.kind, 0.1);
  c.dt = 0.05;
  c.t_final = 1.0;
  const RunResult r = run(c);
  const PerturbationHistory h = perturbation_history(r, c.kind, c.params);
  ASSERT_EQ(h.t.size(), 2u);
  for (const Field& f : h.w) EXPECT_LE(max_abs(f), 1e-15);
  for (const Field& f : h.z) EXPECT_LE(max_abs(f), 1e-15);
  const PerturbSeries s = norm_series(h);
  EXPECT_LE(s.n_functional.back(), 1e-28);
}

TEST(NormSeries, SyntheticDecayingMode) {
  const PerturbationHistory h = synthetic();
  const PerturbSeries s = norm_series(h);
  const double root_pi = std::sqrt(std::numbers::pi);
  for (std::size_t m = 0; m < s.t.size(); ++m) {
    const double e = std::exp(-s.t[m]);
    EXPECT_NEAR(s.w[0][m], root_pi * e, 1e-5);
    EXPECT_NEAR(s.w[1][m], root_pi * e, 1e-5);
    EXPECT_NEAR(s.w[2][m], root_pi * e, 1e-4);
    EXPECT_EQ(s.z[0][m], 0.0);
    EXPECT_NEAR(s.combo[m], s.w[0][m], 1e-15);
    EXPECT_NEAR(s.w_max[m], e, 1e-6);
    if (m > 0 && m + 1 < s.t.size()) EXPECT_NEAR(s.w_t[m], root_pi * e, 1e-4);

    const double tau = 1.0 + s.t[m];
    const double energy = std::numbers::pi * e * e * (1.0 + tau + tau * tau);
    EXPECT_NEAR(s.energy[m], energy, 1e-4);
    const double cum = std::numbers::pi * (1.0 - e * e) / 2.0;
    EXPECT_NEAR(s.cum_w[0][m], cum, 1e-4);
    EXPECT_NEAR(s.dissipation()[m], 2.0 * cum, 2e-4);
  }
}

TEST(NormSeries, RunningMaximumFunctional) {
  const PerturbSeries s = norm_series(synthetic());
  double best = 0.0;
  for (std::size_t m = 0; m < s.t.size(); ++m) {
    best = std::max(best, s.energy[m]);
    EXPECT_EQ(s.n_functional[m], best);
  }
  // e^{-2t} (3 + 3t + t^2) peaks at t = 0.
  EXPECT_EQ(s.n_functional.back(), s.energy.front());
}

TEST(NormSeries, NeedsTwoSnapshots) {
  PerturbationHistory h = synthetic();
  h.t.resize(1);
  h.w.resize(1);
  h.z.resize(1);
  EXPECT_THROW(norm_series(h), ConfigError);
}

TEST(DecayFit, ExactAndOscillatingPowerLaws) {
  std::vector<double> t, exact, wobble;
  for (int i = 0; i <= 400; ++i) {
    t.push_back(i);
    exact.push_back(0.3 * std::pow(1.0 + i, -0.75));
    wobble.push_back((2.0 + std::sin(std::log(1.0 + i))) / (1.0 + i));
  }
  const RateFit a = fit_decay_rate(t, exact, 40.0, 400.0);
  EXPECT_NEAR(a.exponent, -0.75, 1e-12);
  EXPECT_EQ(a.samples, 361u);
  EXPECT_NEAR(a.r2, 1.0, 1e-12);
  const RateFit b = fit_decay_rate(t, wobble, 0.0, 400.0);
  EXPECT_GE(b.exponent, -1.15);
  EXPECT_LE(b.exponent, -0.85);
  EXPECT_NEAR(b.exponent, oracle::loglog_slope(t, wobble), 1e-10);
}

TEST(DecayFit, RejectsSparseWindows) {
  std::vector<double> t, v;
  for (int i = 0; i < 20; ++i) {
    t.push_back(i);
    v.push_back(1.0 / (1.0 + i));
  }
  EXPECT_THROW(fit_decay_rate(t, v, 0.0, 6.5), NumericalError);
  EXPECT_NO_THROW(fit_decay_rate(t, v, 0.0, 7.0));
  EXPECT_THROW(fit_decay_rate(t, v, 5.0, 5.0), ConfigError);
}

TEST(TailCheck, DecayingAndPersistentSeries) {
  std::vector<double> t, decay, flat;
  for (int i = 0; i <= 400; ++i) {
    t.push_back(i);
    decay.push_back(1.0 / (1.0 + i));
    flat.push_back(1.0);
  }
  const TailCheck a = tail_vanishing_check(t, decay);
  EXPECT_TRUE(a.vanishing);
  EXPECT_EQ(a.max_value, 1.0);
  EXPECT_FALSE(tail_vanishing_check(t, flat).vanishing);
  const std::vector<double> short_t{0.0, 1.0, 5.0}, short_v{1.0, 0.5, 0.1};
  EXPECT_THROW(tail_vanishing_check(short_t, short_v), ConfigError);
}

TEST(HeatOracle, MatchesConvolutionAndConservesMass) {
  for (double t : {0.0, 0.5, 2.0}) {
    for (double x : {0.0, 1.3, -4.0}) {
      EXPECT_NEAR(heat_oracle(1.0, 0.01, 1.0, x, t),
                  oracle::heat_by_convolution(1.0, 0.01, 1.0, x, t), 1e-12);
    }
    const double mass = oracle::simpson(
        [t](double x) { return heat_oracle(1.0, 0.01, 1.0, x, t); }, -60.0, 60.0, 20000);
    EXPECT_NEAR(mass, 0.01 * std::sqrt(2.0 * std::numbers::pi), 1e-12);
    EXPECT_DOUBLE_EQ(heat_oracle(1.0, 0.01, 1.0, 0.0, t), 0.01 / std::sqrt(1.0 + 2.0 * t));
  }
}

TEST(BoundaryReport, TracesPerKind) {
  RunConfig c;
  c.params = params(0.0, 0.0);
  c.kind = NeumannKind{30.0};
  c.grid = grid_for(c.kind, 0.1);
  c.dt = 0.05;
  c.t_final = 2.0;
  c.output_times = {0.0, 1.0, 2.0};
  c.initial.z0 = GaussianBump{0.01, 0.0, 1.0};
  const RunResult r = run(c);
  const BoundaryReport b = boundary_report(perturbation_history(r, c.kind, c.params), c.kind);
  EXPECT_FALSE(b.dirichlet);
  ASSERT_EQ(b.t.size(), 3u);
  for (std::size_t m = 0; m < b.t.size(); ++m) {
    EXPECT_LE(b.w_trace[m], 1e-10);
    EXPECT_LE(b.z_trace[m], 1e-10);
  }

  RunConfig cauchy;
  cauchy.params = params(-0.025, 0.025);
  cauchy.kind =
      CauchyKind{DiffusionWave(solve_profile_cauchy(cauchy.params), cauchy.params), 40.0};
  PerturbationHistory empty;
  EXPECT_THROW(boundary_report(empty, cauchy.kind), ConfigError);
}
