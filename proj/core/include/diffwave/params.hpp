#pragma once

namespace diffwave {

/// Coefficients of the 1D Keller-Segel system
///   u_t - a u_xx + kappa (u rho_x)_x = 0,
///   rho_t - b rho_xx + lambda rho - mu u = 0,
/// together with the far-field bacteria densities. Chemical far-field states
/// are always derived through the Darcy closure rho = (mu / lambda) u.
struct ModelParams {
  double a = 1.0;
  double b = 1.0;
  double lambda = 1.0;
  double mu = 1.0;
  double kappa = 1.0;
  double u_minus = 0.0;
  double u_plus = 0.0;

  /// kappa * mu / lambda, the slope of the effective diffusivity.
  double coupling() const noexcept { return kappa * mu / lambda; }

  /// Effective diffusivity f(u) = a - (kappa mu / lambda) u of the Darcy limit.
  double diffusivity(double u) const noexcept { return a - coupling() * u; }

  double darcy(double u) const noexcept { return mu / lambda * u; }
  double rho_minus() const noexcept { return darcy(u_minus); }
  double rho_plus() const noexcept { return darcy(u_plus); }

  /// a lambda / (kappa mu); +inf when kappa == 0.
  double degeneracy_bound() const noexcept;

  /// Wave strength |rho_+ - rho_-| + |u_+| + |u_-|.
  double wave_strength() const noexcept;

  /// Throws ConfigError naming the violated bound.
  void validate() const;
};

}  // namespace diffwave
