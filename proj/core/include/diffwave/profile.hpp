#pragma once

#include <optional>
#include <vector>

#include "diffwave/grid.hpp"
#include "diffwave/params.hpp"

namespace diffwave {

/// Samples of one solution of the self-similar profile equation
///   (f(phi) phi')' + (xi / 2) phi' = 0,   f(phi) = a - (kappa mu / lambda) phi,
/// ordered by increasing xi.
struct ProfileTrajectory {
  std::vector<double> xi;
  std::vector<double> phi;
  std::vector<double> dphi;
  bool halted_left = false;   // f(phi) <= 0 was reached going left
  bool halted_right = false;  // f(phi) <= 0 was reached going right
};

/// Integrates the profile ODE with classical RK4 from xi = 0 outward to
/// xi_min <= 0 and xi_max >= 0 with step dxi, starting from phi(0) = phi0 and
/// phi'(0) = slope0. A direction stops early (and is flagged) where f(phi)
/// stops being positive. Throws ConfigError if f(phi0) <= 0 and
/// NumericalError on non-finite values.
ProfileTrajectory integrate_profile_ode(const ModelParams& params, double phi0, double slope0,
                                        double xi_min, double xi_max, double dxi);

enum class ProfileDomain { kFullLine, kHalfLine };

struct ShootingAnchor {
  double xi0 = 0.0;
  double phi0 = 0.0;
  double slope0 = 0.0;
};

/// |phi'(xi)| ~ c_amp |u_+ - u_-| exp(-c0 xi^2), with the fit's r^2.
struct Envelope {
  double c_amp = 0.0;
  double c0 = 0.0;
  double r2 = 0.0;
};

/// Sampled diffusion-wave profile on a uniform xi grid.
struct Profile {
  ProfileDomain domain = ProfileDomain::kFullLine;
  Grid xi_grid;
  Field phi;
  Field dphi;
  double u_minus = 0.0;
  double u_plus = 0.0;
  std::optional<double> beta;  // boundary value phi(0) of a half-line profile
  ShootingAnchor anchor;
  std::optional<Envelope> envelope;
  double left_residual = 0.0;   // |phi(xi_min) - left target|
  double right_residual = 0.0;  // |phi(xi_max) - u_plus|
  int shooting_rounds = 0;

  bool is_constant() const noexcept;
  double xi_min() const noexcept { return xi_grid.x0; }
  double xi_max() const noexcept { return xi_grid.x_last(); }
  /// Value approached as xi decreases to xi_min: u_minus, or beta on the half line.
  double left_state() const noexcept;
};

struct ShootingOptions {
  double dxi_fraction = 1e-3;  // dxi = dxi_fraction * xi_max
  int max_rounds = 200;        // per bisection loop
};

/// Far-field extent sqrt(4 f_max ln(10 / tol)) with f_max = a + (kappa mu / lambda) max|u_+-|,
/// so that the linear-diffusion envelope exp(-xi^2 / (4 f_max)) is below tol / 10.
double profile_xi_max(const ModelParams& params, double tol);

/// Full-line profile connecting u_minus to u_plus, by nested bisection on
/// (phi(0), phi'(0)). Throws ShootingError on non-convergence and ConfigError
/// for invalid parameters or tol outside (0, 1e-3].
Profile solve_profile_cauchy(const ModelParams& params, double tol = 1e-8,
                             const ShootingOptions& options = {});

/// Half-line profile with phi(0) = beta and phi(+inf) = u_plus, by bisection
/// on phi'(0). beta must lie between u_minus and u_plus.
Profile solve_profile_halfline(const ModelParams& params, double beta, double tol = 1e-8,
                               const ShootingOptions& options = {});

/// Least-squares line through (xi^2, log|phi'|) over samples with |phi'| > 1e-12.
/// Throws ConfigError on constant profiles and NumericalError if the fitted
/// Gaussian rate is not positive.
Envelope fit_envelope(const Profile& profile);

/// Max-norm residual of (f(phi) phi')' + (xi/2) phi' over the interior samples,
/// with (f(phi) phi')' from fourth-order central differences.
double profile_ode_residual(const ModelParams& params, const Profile& profile);

}  // namespace diffwave
