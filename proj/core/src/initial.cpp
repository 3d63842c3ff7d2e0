#include "diffwave/initial.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "diffwave/error.hpp"

namespace diffwave {

FilteredNoise::FilteredNoise(std::uint64_t seed, double cutoff, double amp, double center,
                             double window)
    : seed_(seed), cutoff_(cutoff), amp_(amp), center_(center), window_(window) {
  if (!(cutoff > 0.0)) throw ConfigError("filtered_noise cutoff must be positive");
  if (!(window > 0.0)) throw ConfigError("filtered_noise window must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> wave(0.0, cutoff);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> coef(0.0, 1.0);
  double total = 0.0;
  for (int m = 0; m < kModes; ++m) {
    wavenumber_.push_back(wave(rng));
    phase_.push_back(angle(rng));
    weight_.push_back(coef(rng));
    total += std::abs(weight_.back());
  }
  for (double& w : weight_) w /= total;
}

double FilteredNoise::value(double x) const noexcept {
  const double y = (x - center_) / window_;
  double sum = 0.0;
  for (std::size_t m = 0; m < weight_.size(); ++m) {
    sum += weight_[m] * std::cos(wavenumber_[m] * x + phase_[m]);
  }
  return amp_ * std::exp(-0.5 * y * y) * sum;
}

double FilteredNoise::derivative(double x) const noexcept {
  const double y = (x - center_) / window_;
  const double env = std::exp(-0.5 * y * y);
  double sum = 0.0, dsum = 0.0;
  for (std::size_t m = 0; m < weight_.size(); ++m) {
    const double arg = wavenumber_[m] * x + phase_[m];
    sum += weight_[m] * std::cos(arg);
    dsum -= weight_[m] * wavenumber_[m] * std::sin(arg);
  }
  return amp_ * env * (dsum - y / window_ * sum);
}

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sech2(double v) {
  const double c = std::cosh(v);
  return 1.0 / (c * c);
}
}  // namespace

double shape_value(const Shape& shape, double x) {
  return std::visit(
      Overloaded{
          [](const ZeroShape&) { return 0.0; },
          [x](const GaussianBump& g) {
            const double y = (x - g.center) / g.sigma;
            return g.amp * std::exp(-0.5 * y * y);
          },
          [x](const SmoothedStep& s) {
            return 0.5 * s.amp *
                   (std::tanh((x - s.center + s.half_width) / s.sharpness) -
                    std::tanh((x - s.center - s.half_width) / s.sharpness));
          },
          [x](const FilteredNoise& n) { return n.value(x); },
      },
      shape);
}

double shape_derivative(const Shape& shape, double x) {
  return std::visit(
      Overloaded{
          [](const ZeroShape&) { return 0.0; },
          [x](const GaussianBump& g) {
            const double y = (x - g.center) / g.sigma;
            return -g.amp * y / g.sigma * std::exp(-0.5 * y * y);
          },
          [x](const SmoothedStep& s) {
            return 0.5 * s.amp / s.sharpness *
                   (sech2((x - s.center + s.half_width) / s.sharpness) -
                    sech2((x - s.center - s.half_width) / s.sharpness));
          },
          [x](const FilteredNoise& n) { return n.derivative(x); },
      },
      shape);
}

double shape_amplitude(const Shape& shape) {
  return std::visit(Overloaded{
                        [](const ZeroShape&) { return 0.0; },
                        [](const GaussianBump& g) { return std::abs(g.amp); },
                        [](const SmoothedStep& s) { return std::abs(s.amp); },
                        [](const FilteredNoise& n) { return std::abs(n.amp()); },
                    },
                    shape);
}

double shape_support_radius(const Shape& shape) {
  // exp(-y^2/2) < 1e-6 beyond y = 5.3; tanh tails fall below 1e-6 after 7.3 s.
  return std::visit(
      Overloaded{
          [](const ZeroShape&) { return 0.0; },
          [](const GaussianBump& g) {
            return g.amp == 0.0 ? 0.0 : std::abs(g.center) + 5.3 * g.sigma;
          },
          [](const SmoothedStep& s) {
            return s.amp == 0.0 ? 0.0
                                : std::abs(s.center) + s.half_width + 7.3 * s.sharpness;
          },
          [](const FilteredNoise& n) {
            return n.amp() == 0.0 ? 0.0 : std::abs(n.center()) + 5.3 * n.window();
          },
      },
      shape);
}

}  // namespace diffwave
