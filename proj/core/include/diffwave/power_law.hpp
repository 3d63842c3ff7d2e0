#pragma once

#include <cstddef>
#include <span>

namespace diffwave {

/// values ~ exp(intercept) * (1 + t)^exponent, by ordinary least squares on
/// (log(1 + t), log(value)).
struct PowerLawFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t samples = 0;
};

/// Throws NumericalError on non-positive values, fewer than two samples, or
/// a degenerate time axis.
PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values);

}  // namespace diffwave
