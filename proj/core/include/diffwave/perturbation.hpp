#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diffwave/grid.hpp"
#include "diffwave/params.hpp"
#include "diffwave/solver.hpp"

namespace diffwave {

/// (w, z) = (rho - rho_bar, u - u_bar) at the state's time; for Neumann the
/// reference is the constant state (mu u_plus / lambda, u_plus).
std::pair<Field, Field> perturbation(const State& state, const Grid& grid,
                                     const ProblemKind& kind, const ModelParams& params);

/// Perturbations of every snapshot of a run.
struct PerturbationHistory {
  Grid grid;
  bool half_line = false;
  double lambda = 1.0;
  double mu = 1.0;
  std::vector<double> t;
  std::vector<Field> w;
  std::vector<Field> z;
};

PerturbationHistory perturbation_history(const RunResult& run, const ProblemKind& kind,
                                         const ModelParams& params);

/// Norm time series of a perturbation history. Spatial norms are L2; time
/// derivatives come from centered differences of consecutive snapshots
/// (one-sided at the ends).
struct PerturbSeries {
  std::vector<double> t;
  std::array<std::vector<double>, 3> w;  // ||d^k_x w||, k = 0..2
  std::array<std::vector<double>, 3> z;
  std::vector<double> w_t, z_t, w_xt, z_xt;
  std::vector<double> combo;    // ||lambda w - mu z||
  std::vector<double> combo_x;  // ||d_x (lambda w - mu z)||
  std::vector<double> combo_t;  // ||lambda w_t - mu z_t||
  std::vector<double> w_max, z_max;

  // Running trapezoidal integrals over [0, t] with weight (1 + s)^j, j = 0..2, of
  // ||d^{j+1}_x w||^2, ||d^{j+1}_x z||^2 and ||d^j_x (lambda w - mu z)||^2.
  std::array<std::vector<double>, 3> cum_w;
  std::array<std::vector<double>, 3> cum_z;
  std::array<std::vector<double>, 3> cum_combo;
  std::vector<double> cum_combo_t;  // int (1 + s)^2 ||lambda w_t - mu z_t||^2

  std::vector<double> energy;       // sum_k (1 + t)^k (||d^k w||^2 + ||d^k z||^2)
  std::vector<double> n_functional; // running maximum of `energy`

  /// int_0^t (||w_x||^2 + ||z_x||^2 + ||lambda w - mu z||^2).
  std::vector<double> dissipation() const;
};

/// Throws ConfigError for fewer than 2 snapshots.
PerturbSeries norm_series(const PerturbationHistory& history);
PerturbSeries norm_series(const RunResult& run, const ProblemKind& kind,
                          const ModelParams& params);

struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  double r2 = 0.0;
  std::size_t samples = 0;
};

/// Least squares of log(value) against log(1 + t) over samples with
/// t_min <= t <= t_max. Needs at least 8 samples, all positive.
RateFit fit_decay_rate(std::span<const double> times, std::span<const double> values,
                       double t_min, double t_max);

/// Boundary diagnostics at x = 0 per snapshot.
/// Dirichlet: trace = (|w(0)|, |z(0)|), curvature = |w_xx(0)| (1 + t).
/// Neumann:   trace = (|w_x(0)|, |z_x(0)|), curvature = |w_xxx(0)|.
struct BoundaryReport {
  bool dirichlet = true;
  std::vector<double> t;
  std::vector<double> w_trace;
  std::vector<double> z_trace;
  std::vector<double> curvature;
};

/// Throws ConfigError for the Cauchy kind.
BoundaryReport boundary_report(const PerturbationHistory& history, const ProblemKind& kind);

struct TailCheck {
  bool vanishing = false;
  double first_decade_mean = 0.0;
  double last_decade_mean = 0.0;
  double final_value = 0.0;
  double max_value = 0.0;
};

/// Decades are measured in 1 + t. Passes when the mean over the last decade is
/// at most 10% of the mean over the first decade and the final value is at
/// most 5% of the maximum. Throws ConfigError when the series spans less than
/// one decade.
TailCheck tail_vanishing_check(std::span<const double> times, std::span<const double> values);

/// Solution of u_t = a u_xx from amp exp(-x^2 / (2 sigma^2)).
double heat_oracle(double a, double amp, double sigma, double x, double t);

}  // namespace diffwave
