#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "diffwave/error.hpp"
#include "diffwave/manufactured.hpp"
#include "diffwave/verify.hpp"
#include "oracles.hpp"

using namespace diffwave;

namespace {
RunConfig dirichlet_base() {
  RunConfig c;
  c.kind = DirichletKind{0.0, DiffusionWave(solve_profile_halfline(c.params, 0.0), c.params), 2.0};
  c.t_final = 0.5;
  return c;
}

const VerifyCheck* find_check(const VerifyReport& r, const std::string& name) {
  const auto it = std::find_if(r.checks.begin(), r.checks.end(),
                               [&](const VerifyCheck& c) { return c.name == name; });
  return it == r.checks.end() ? nullptr : &*it;
}
}  // namespace

TEST(Manufactured, ForcingVanishesForEquilibrium) {
  // (u, rho) = (u0, mu u0 / lambda) solves the unforced system.
  ModelParams p;
  p.mu = 2.0;
  const ManufacturedForcing f = make_forcing(p, constant_target(0.01, 0.02));
  for (double x : {0.0, 0.7, 1.9}) {
    EXPECT_EQ(f.source_u(x, 0.3), 0.0);
    EXPECT_NEAR(f.source_rho(x, 0.3), 0.0, 1e-18);
  }
}

TEST(Manufactured, CosineSourcesMatchHandDerivation) {
  ModelParams p;
  p.a = 0.5;
  p.b = 2.0;
  p.kappa = 0.3;
  p.lambda = 1.5;
  p.mu = 0.7;
  const ManufacturedForcing f = make_forcing(p, cosine_decay_target());
  for (double x : {0.1, 1.2}) {
    for (double t : {0.0, 0.8}) {
      const double e = std::exp(-t), c = std::cos(x), s = std::sin(x);
      const double su = -e * c + p.a * e * c + p.kappa * (e * s * e * s - e * c * e * c);
      const double sr = -e * c + p.b * e * c + p.lambda * e * c - p.mu * e * c;
      EXPECT_NEAR(f.source_u(x, t), su, 1e-15);
      EXPECT_NEAR(f.source_rho(x, t), sr, 1e-15);
      EXPECT_DOUBLE_EQ(f.exact_u(x, t), e * c);
    }
  }
}

TEST(Manufactured, ConstantTargetReproducedToRounding) {
  RunConfig base = dirichlet_base();
  MmsLadder ladder;
  ladder.spatial = {{0.1, 0.0025}, {0.05, 0.000625}, {0.025, 0.00015625}};
  const ConvergenceReport r = manufactured_residual(base, constant_target(0.01, -0.02), ladder);
  ASSERT_EQ(r.spatial.size(), 3u);
  for (const ConvergenceLevel& l : r.spatial) EXPECT_LE(l.error, 1e-14);
}

TEST(Manufactured, SpatialOrderOnDefaultLadder) {
  MmsLadder ladder = default_mms_ladder();
  ladder.temporal.clear();
  const ConvergenceReport r = manufactured_residual(dirichlet_base(), cosine_decay_target(), ladder);
  EXPECT_TRUE(r.spatial_sufficient);
  EXPECT_GE(r.spatial_order, 1.8);
  for (std::size_t i = 1; i < r.spatial.size(); ++i) {
    EXPECT_LT(r.spatial[i].error, r.spatial[i - 1].error);
  }
}

TEST(Manufactured, ShortLadderIsInsufficient) {
  MmsLadder ladder;
  ladder.spatial = {{0.1, 0.0025}, {0.05, 0.000625}};
  const ConvergenceReport r = manufactured_residual(dirichlet_base(), cosine_decay_target(), ladder);
  EXPECT_FALSE(r.spatial_sufficient);
  EXPECT_FALSE(r.temporal_sufficient);
  EXPECT_NE(r.note.find("insufficient"), std::string::npos);
}

TEST(Manufactured, NeumannRejectsIncompatibleTarget) {
  RunConfig base;
  base.kind = NeumannKind{2.0};
  base.t_final = 0.5;
  ManufacturedTarget sine = cosine_decay_target();
  sine.name = "sine";
  sine.u_x = [](double x, double t) { return std::exp(-t) * std::cos(x); };
  try {
    manufactured_residual(base, sine);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("incompatible"), std::string::npos);
  }
}

TEST(Verify, UnitCircleMinimumMatchesOracle) {
  for (const auto& [l, m, k] : {std::tuple{1.0, 1.0, 3.0}, std::tuple{2.0, -1.5, 0.5},
                                std::tuple{0.3, 0.0, 4.0}}) {
    EXPECT_NEAR(unit_circle_minimum(l, m, k), oracle::circle_min(l, m, k), 1e-10);
  }
  // Closed form: (lambda + K - sqrt((lambda - K)^2 + 4 mu^2)) / 4.
  EXPECT_NEAR(unit_circle_minimum(1.0, 1.0, 3.0), (4.0 - std::sqrt(8.0)) / 4.0, 1e-10);
}

TEST(Verify, BundledChecksPassAndFaultIsCaught) {
  const VerifyReport ok = run_verification();
  for (const VerifyCheck& c : ok.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(ok.passed());
  ASSERT_NE(find_check(ok, "stencil_exactness"), nullptr);

  VerifyOptions faulty;
  faulty.second_derivative = [](std::span<const double> f, const Grid&) {
    return Field(f.size(), 0.0);
  };
  const VerifyReport bad = run_verification(faulty);
  EXPECT_FALSE(bad.passed());
  const VerifyCheck* stencil = find_check(bad, "stencil_exactness");
  ASSERT_NE(stencil, nullptr);
  EXPECT_FALSE(stencil->passed);
}
