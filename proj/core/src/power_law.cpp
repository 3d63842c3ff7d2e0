#include "diffwave/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "diffwave/error.hpp"

namespace diffwave {

PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw NumericalError("times and values differ in length");
  const std::size_t n = times.size();
  if (n < 2) throw NumericalError("power-law fit needs at least two samples");

  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      std::ostringstream os;
      os << "power-law fit needs positive values (got " << values[i] << " at t = " << times[i]
         << ")";
      throw NumericalError(os.str());
    }
    if (!(times[i] > -1.0)) throw NumericalError("power-law fit needs t > -1");
    lx[i] = std::log1p(times[i]);
    ly[i] = std::log(values[i]);
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = lx[i] - mx;
    const double dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw NumericalError("power-law fit needs distinct times");

  PowerLawFit fit;
  fit.samples = n;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.intercept + fit.exponent * lx[i]);
    ss_res += r * r;
  }
  // A flat series that the line reproduces exactly counts as a perfect fit.
  const double floor = 1e-28 * std::max(1.0, my * my) * static_cast<double>(n);
  fit.r2 = syy > floor ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace diffwave
