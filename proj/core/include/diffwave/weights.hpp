#pragma once

#include <vector>

#include "diffwave/grid.hpp"
#include "diffwave/perturbation.hpp"
#include "diffwave/profile.hpp"

namespace diffwave {

/// Squared-heat-kernel weight w(x, t) = (1 + t)^{-1/2} exp(-alpha x^2 / (1 + t))
/// and its primitive g, taken from -inf on the full line and from 0 on the
/// half line.
struct WeightKernel {
  double alpha = 0.125;
  ProfileDomain domain = ProfileDomain::kFullLine;
};

struct WeightValue {
  double omega = 0.0;
  double g = 0.0;
};

WeightValue weight_eval(const WeightKernel& kernel, double x, double t);

/// sup_x g: sqrt(pi / alpha) on the full line, half that on the half line.
double weight_primitive_sup(const WeightKernel& kernel);

/// Max finite-difference residuals over the grid of
///   omega_t - omega_xx / (4 alpha)   and   4 alpha g_t - omega_x,
/// with centered differences of step dx in both x and t.
struct WeightIdentityReport {
  double heat_residual = 0.0;
  double primitive_residual = 0.0;
  double max_residual() const noexcept;
};

WeightIdentityReport weight_identity_check(const WeightKernel& kernel, const Grid& grid, double t);

enum class Component { kW, kZ };

/// Trapezoidal int int h^2 omega^2 dx dt over the snapshots.
double weighted_spacetime_integral(const Grid& grid, const std::vector<double>& t,
                                   const std::vector<Field>& h, const WeightKernel& kernel);
double weighted_spacetime_integral(const PerturbationHistory& history, Component which,
                                   const WeightKernel& kernel);

/// lhs = int int z^2 omega^2, rhs = int (||z_x||^2 + ||w_x||^2) dt + ||z_0||^2.
struct WeightedEstimate {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;         // lhs / rhs; 0 when both vanish
  bool inconsistent = false;  // rhs == 0 while lhs > 0
};

WeightedEstimate check_weighted_estimate(const PerturbationHistory& history,
                                         const WeightKernel& kernel);

}  // namespace diffwave
