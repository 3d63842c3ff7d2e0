#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "diffwave/params.hpp"
#include "diffwave/solver.hpp"

namespace diffwave {

/// Closed-form (u*, rho*) with the derivatives the forcing needs.
struct ManufacturedTarget {
  using Fn = std::function<double(double x, double t)>;
  std::string name;
  Fn u, u_t, u_x, u_xx;
  Fn rho, rho_t, rho_x, rho_xx;
};

/// u* = rho* = e^{-t} cos x.
ManufacturedTarget cosine_decay_target();

/// u* = u0, rho* = rho0.
ManufacturedTarget constant_target(double u0, double rho0);

/// Sources that make the target an exact solution of the forced system:
///   S_u   = u_t - a u_xx + kappa (u_x rho_x + u rho_xx)
///   S_rho = rho_t - b rho_xx + lambda rho - mu u
ManufacturedForcing make_forcing(const ModelParams& params, const ManufacturedTarget& target);

/// (dx, dt) pairs of a refinement ladder.
struct MmsLadder {
  std::vector<std::pair<double, double>> spatial;   // dt shrinks with dx^2
  std::vector<std::pair<double, double>> temporal;  // dx fixed, dt halves
};

/// dx = 0.1, 0.05, 0.025 with dt = dx^2 / 4, and dx = 0.005 with
/// dt = 0.0025, 0.00125, 0.000625.
MmsLadder default_mms_ladder();

struct ConvergenceLevel {
  double dx = 0.0;
  double dt = 0.0;
  double error_u = 0.0;    // max |u - u*| at t_final
  double error_rho = 0.0;
  double error = 0.0;      // max of the two
};

struct ConvergenceReport {
  std::vector<ConvergenceLevel> spatial;
  std::vector<ConvergenceLevel> temporal;
  std::vector<double> spatial_orders;   // log2-style ratios between consecutive levels
  std::vector<double> temporal_orders;
  double spatial_order = 0.0;           // finest pair
  double temporal_order = 0.0;
  bool spatial_sufficient = false;
  bool temporal_sufficient = false;
  std::string note;                     // "insufficient refinement" diagnostics
};

/// Runs the forced solver on `base` (its kind fixes the domain and closure)
/// at every ladder level and reports the max error at t_final together with
/// the observed orders. A ladder direction counts as sufficient only with at
/// least 3 levels, at least 20 intervals on its finest grid, and consecutive
/// order estimates agreeing within 0.5. Throws ConfigError if the target does
/// not satisfy the Neumann closure on a Neumann kind.
ConvergenceReport manufactured_residual(const RunConfig& base, const ManufacturedTarget& target,
                                        const MmsLadder& ladder = default_mms_ladder());

}  // namespace diffwave
