#include "diffwave/stencil.hpp"

#include "diffwave/error.hpp"

namespace diffwave {

Field dx1(std::span<const double> f, const Grid& grid) {
  require_aligned(f, grid);
  const std::size_t n = f.size();
  const double h = grid.dx;
  Field out(n);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return out;
}

Field dx2(std::span<const double> f, const Grid& grid) {
  require_aligned(f, grid);
  const std::size_t n = f.size();
  const double h2 = grid.dx * grid.dx;
  Field out(n);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
  if (n >= 4) {
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  } else {
    out[0] = out[1];
    out[n - 1] = out[1];
  }
  return out;
}

double dx1_left(std::span<const double> f, double dx) {
  if (f.size() < 3) throw ConfigError("dx1_left needs 3 nodes");
  return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
}

double dx2_left(std::span<const double> f, double dx) {
  if (f.size() < 4) throw ConfigError("dx2_left needs 4 nodes");
  return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (dx * dx);
}

double dx3_left(std::span<const double> f, double dx) {
  if (f.size() < 5) throw ConfigError("dx3_left needs 5 nodes");
  return (-5.0 * f[0] + 18.0 * f[1] - 24.0 * f[2] + 14.0 * f[3] - 3.0 * f[4]) /
         (2.0 * dx * dx * dx);
}

}  // namespace diffwave
