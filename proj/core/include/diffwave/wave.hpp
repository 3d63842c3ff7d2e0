#pragma once

#include <array>
#include <span>

#include "diffwave/params.hpp"
#include "diffwave/profile.hpp"

namespace diffwave {

/// The nonlinear diffusion wave u_bar(x, t) = phi(x / sqrt(1 + t)) and its
/// Darcy companion rho_bar = (mu / lambda) u_bar.
class DiffusionWave {
 public:
  DiffusionWave(Profile profile, ModelParams params);

  const Profile& profile() const noexcept { return profile_; }
  const ModelParams& params() const noexcept { return params_; }

  /// phi and its first four derivatives at xi. Off-sample xi uses cubic
  /// Hermite interpolation of (phi, phi'); higher derivatives come from
  /// differentiating the profile ODE. Outside the sampled span the wave is
  /// flat at its end values.
  std::array<double, 5> jet(double xi) const;

  /// d^k/dx^k d^j/dt^j u_bar(x, t), for k + 2j <= 4.
  double u(double x, double t, int k = 0, int j = 0) const;

  /// (mu / lambda) times u().
  double rho(double x, double t, int k = 0, int j = 0) const;

 private:
  Profile profile_;
  ModelParams params_;
};

double wave_eval(const DiffusionWave& wave, double x, double t, int k, int j);
double rho_bar_eval(const DiffusionWave& wave, double x, double t, int k, int j);

struct DecayCheck {
  double observed_exponent = 0.0;
  double predicted_exponent = 0.0;
  double r2 = 0.0;
  bool degenerate = false;  // all norms vanish (constant wave)
};

/// Fits the decay of ||d^k_x d^j_t u_bar(t)||_{L^p} in (1 + t) over `times`
/// and compares with the exponent -k/2 - j + 1/(2p) (1/(2p) = 0 for p = inf).
DecayCheck check_decay_table(const DiffusionWave& wave, std::span<const double> times, int k,
                             int j, double p);

}  // namespace diffwave
