#include "diffwave/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "diffwave/energy.hpp"
#include "diffwave/error.hpp"
#include "diffwave/perturbation.hpp"
#include "diffwave/profile.hpp"
#include "diffwave/solver.hpp"
#include "diffwave/stencil.hpp"
#include "diffwave/tridiag.hpp"
#include "diffwave/weights.hpp"

namespace diffwave {

bool VerifyReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

double unit_circle_minimum(double lambda, double mu, double K) {
  constexpr int kSteps = 3600;
  const double step = std::numbers::pi / kSteps;  // the form is even in the angle
  auto q = [&](double th) { return quadratic_form(lambda, mu, K, std::cos(th), std::sin(th)); };
  double best_th = 0.0, best = q(0.0);
  for (int i = 1; i < kSteps; ++i) {
    const double v = q(i * step);
    if (v < best) {
      best = v;
      best_th = i * step;
    }
  }
  double lo = best_th - step, hi = best_th + step;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (q(m1) < q(m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  return std::min(best, q(0.5 * (lo + hi)));
}

namespace {

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

VerifyCheck stencil_check(const VerifyOptions& opt) {
  const Grid g{-1.0, 0.05, 41};
  const Field quad = sample(g, [](double x) { return 1.5 * x * x - x + 0.25; });
  const Field d2 = opt.second_derivative ? opt.second_derivative(quad, g) : dx2(quad, g);
  const Field d1 = dx1(quad, g);
  double err = 0.0;
  for (std::size_t i = 0; i < g.n; ++i) {
    err = std::max(err, std::abs(d2[i] - 3.0));
    err = std::max(err, std::abs(d1[i] - (3.0 * g.x(i) - 1.0)));
  }
  return {"stencil_exactness", err <= 1e-9, err, 1e-9,
          "dx1/dx2 applied to a quadratic, max deviation from the exact derivatives"};
}

double heat_error(double dx) {
  ModelParams p;
  p.kappa = 0.0;
  const Profile prof = solve_profile_cauchy(p);
  RunConfig cfg;
  cfg.params = p;
  cfg.kind = CauchyKind{DiffusionWave(prof, p), 20.0};
  cfg.grid = grid_for(cfg.kind, dx);
  cfg.dt = cfg.grid.dx * cfg.grid.dx;
  cfg.t_final = 2.0;
  cfg.initial.z0 = GaussianBump{0.01, 0.0, 1.0};
  const RunResult r = run(cfg);
  const State& s = r.snapshots.back();
  double err = 0.0;
  for (std::size_t i = 0; i < cfg.grid.n; ++i) {
    err = std::max(err, std::abs(s.u[i] - heat_oracle(p.a, 0.01, 1.0, cfg.grid.x(i), s.t)));
  }
  return err;
}

void heat_checks(VerifyReport& rep) {
  const double coarse = heat_error(0.1);
  const double fine = heat_error(0.05);
  rep.checks.push_back({"heat_oracle_error", coarse <= 5e-3, coarse, 5e-3,
                        "kappa = 0 Gaussian, dx = 0.1, dt = dx^2, t = 2"});
  const double factor = fine > 0.0 ? coarse / fine : 0.0;
  rep.checks.push_back({"heat_refinement_factor", factor >= 3.4 && factor <= 4.6, factor, 4.0,
                        "error ratio under (dx, dt) -> (dx/2, dt/4), accepted in [3.4, 4.6]"});
}

void mms_checks(VerifyReport& rep, const VerifyOptions& opt) {
  ModelParams p;
  RunConfig base;
  base.params = p;
  base.kind = DirichletKind{0.0, DiffusionWave(solve_profile_halfline(p, 0.0), p), 2.0};
  base.t_final = 1.0;
  const ConvergenceReport c = manufactured_residual(base, cosine_decay_target(), opt.ladder);
  const bool s_ok = c.spatial_sufficient && c.spatial_order >= 1.8;
  const bool t_ok = c.temporal_sufficient && c.temporal_order >= 0.85 && c.temporal_order <= 1.15;
  rep.checks.push_back({"mms_spatial_order", s_ok, c.spatial_order, 1.8,
                        c.spatial_sufficient ? "observed order, finest pair" : c.note});
  rep.checks.push_back({"mms_temporal_order", t_ok, c.temporal_order, 1.0,
                        c.temporal_sufficient ? "observed order in [0.85, 1.15]" : c.note});
}

void weight_checks(VerifyReport& rep) {
  const WeightKernel heat{0.25, ProfileDomain::kFullLine};
  const double coarse =
      weight_identity_check(heat, build_grid_with_spacing(-10.0, 20.0, 0.005), 1.0).max_residual();
  const double fine =
      weight_identity_check(heat, build_grid_with_spacing(-10.0, 20.0, 0.0025), 1.0).max_residual();
  rep.checks.push_back({"weight_identity_residual", fine <= 1e-6, fine, 1e-6,
                        "alpha = 1/4, t = 1, dx = 0.0025"});
  const double order = std::log2(coarse / fine);
  rep.checks.push_back({"weight_identity_order", order >= 1.8, order, 2.0,
                        "residual order under dx halving"});

  double err = 0.0;
  for (double alpha : {0.125, 0.25, 1.0, std::numbers::pi}) {
    for (auto dom : {ProfileDomain::kFullLine, ProfileDomain::kHalfLine}) {
      const WeightKernel k{alpha, dom};
      const double expect = (dom == ProfileDomain::kFullLine ? 1.0 : 0.5) *
                            std::sqrt(std::numbers::pi) / std::sqrt(alpha);
      err = std::max(err, std::abs(weight_eval(k, 1e4, 3.0).g - expect));
    }
  }
  rep.checks.push_back({"weight_primitive_sup", err <= 1e-10, err, 1e-10,
                        "sup g against sqrt(pi/alpha) (full) and half of it (half line)"});
}

void definiteness_check(VerifyReport& rep, const VerifyOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> pos(0.05, 4.0);
  std::uniform_real_distribution<double> any(-4.0, 4.0);
  int disagreements = 0;
  for (int i = 0; i < opt.definiteness_trials; ++i) {
    const double lambda = pos(rng), mu = any(rng), K = pos(rng);
    const bool oracle = unit_circle_minimum(lambda, mu, K) > 0.0;
    if (oracle != is_positive_definite(lambda, mu, K)) ++disagreements;
  }
  rep.checks.push_back({"positive_definite_scan", disagreements == 0,
                        static_cast<double>(disagreements), 0.0,
                        str(opt.definiteness_trials) + " random (lambda, mu, K) triples"});
}

std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

void tridiag_check(VerifyReport& rep, const VerifyOptions& opt) {
  constexpr std::size_t n = 50;
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  std::uniform_real_distribution<double> rhs_dist(-5.0, 5.0);
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = i > 0 ? off(rng) : 0.0;
    up[i] = i + 1 < n ? off(rng) : 0.0;
    di[i] = 2.5 + std::abs(off(rng));
    rhs[i] = rhs_dist(rng);
    dense[i][i] = di[i];
    if (i > 0) dense[i][i - 1] = lo[i];
    if (i + 1 < n) dense[i][i + 1] = up[i];
  }
  const std::vector<double> x = tridiag_solve(lo, di, up, rhs);
  const std::vector<double> y = dense_solve(dense, rhs);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(x[i] - y[i]));
  rep.checks.push_back({"tridiagonal_vs_dense", err <= 1e-10, err, 1e-10,
                        "n = 50 diagonally dominant system"});
}

template <class Fn>
void guarded(VerifyReport& rep, const char* name, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    rep.checks.push_back({name, false, std::numeric_limits<double>::quiet_NaN(), 0.0,
                          std::string("error: ") + e.what()});
  }
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport rep;
  guarded(rep, "stencil_exactness", [&] { rep.checks.push_back(stencil_check(options)); });
  guarded(rep, "heat_oracle", [&] { heat_checks(rep); });
  guarded(rep, "mms", [&] { mms_checks(rep, options); });
  guarded(rep, "weights", [&] { weight_checks(rep); });
  guarded(rep, "positive_definite_scan", [&] { definiteness_check(rep, options); });
  guarded(rep, "tridiagonal_vs_dense", [&] { tridiag_check(rep, options); });
  return rep;
}

}  // namespace diffwave
