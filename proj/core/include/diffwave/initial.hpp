#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace diffwave {

struct ZeroShape {};

/// amp * exp(-(x - center)^2 / (2 sigma^2))
struct GaussianBump {
  double amp = 0.0;
  double center = 0.0;
  double sigma = 1.0;
};

/// Smoothed plateau of height amp on [center - half_width, center + half_width]:
///   (amp / 2) [tanh((x - c + w) / s) - tanh((x - c - w) / s)].
struct SmoothedStep {
  double amp = 0.0;
  double center = 0.0;
  double half_width = 1.0;
  double sharpness = 0.5;  // transition length s
};

/// Band-limited random signal under a Gaussian window:
///   amp * exp(-(x - center)^2 / (2 window^2)) * sum_m c_m cos(k_m x + theta_m) / sum_m |c_m|,
/// with k_m uniform in [0, cutoff] and c_m standard normal, all drawn from `seed`.
/// |value| <= amp everywhere.
class FilteredNoise {
 public:
  static constexpr int kModes = 24;

  FilteredNoise(std::uint64_t seed, double cutoff, double amp, double center, double window);

  double value(double x) const noexcept;
  double derivative(double x) const noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  double cutoff() const noexcept { return cutoff_; }
  double amp() const noexcept { return amp_; }
  double center() const noexcept { return center_; }
  double window() const noexcept { return window_; }

 private:
  std::uint64_t seed_;
  double cutoff_;
  double amp_;
  double center_;
  double window_;
  std::vector<double> wavenumber_;
  std::vector<double> phase_;
  std::vector<double> weight_;
};

using Shape = std::variant<ZeroShape, GaussianBump, SmoothedStep, FilteredNoise>;

double shape_value(const Shape& shape, double x);
double shape_derivative(const Shape& shape, double x);
double shape_amplitude(const Shape& shape);

/// Radius around the origin outside which the shape is negligible (below
/// ~1e-6 of its amplitude).
double shape_support_radius(const Shape& shape);

/// Initial perturbations: w0 of the chemical, z0 of the bacteria.
struct InitialData {
  Shape w0 = ZeroShape{};
  Shape z0 = ZeroShape{};
};

}  // namespace diffwave
