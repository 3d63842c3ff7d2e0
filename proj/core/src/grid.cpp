#include "diffwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diffwave/error.hpp"

namespace diffwave {

std::vector<double> Grid::nodes() const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = x(i);
  return out;
}

Grid build_grid(double x0, double length, std::size_t n) {
  if (n < 3) {
    std::ostringstream os;
    os << "grid needs at least 3 nodes (got " << n << ")";
    throw ConfigError(os.str());
  }
  if (!(length > 0.0) || !std::isfinite(length) || !std::isfinite(x0)) {
    std::ostringstream os;
    os << "grid length must be positive and finite (got " << length << ")";
    throw ConfigError(os.str());
  }
  return Grid{x0, length / static_cast<double>(n - 1), n};
}

Grid build_grid_with_spacing(double x0, double length, double max_dx) {
  if (!(max_dx > 0.0)) throw ConfigError("grid spacing must be positive");
  if (!(length > 0.0)) throw ConfigError("grid length must be positive");
  const auto intervals =
      static_cast<std::size_t>(std::ceil(length / max_dx - 1e-9));
  return build_grid(x0, length, std::max<std::size_t>(intervals, 2) + 1);
}

void require_aligned(std::span<const double> f, const Grid& grid) {
  if (f.size() != grid.n) {
    std::ostringstream os;
    os << "field of length " << f.size() << " is not aligned to a grid of " << grid.n
       << " nodes";
    throw ConfigError(os.str());
  }
}

bool all_finite(std::span<const double> f) noexcept {
  return std::all_of(f.begin(), f.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace diffwave
