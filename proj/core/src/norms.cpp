#include "diffwave/norms.hpp"

#include <cmath>

#include "diffwave/error.hpp"
#include "diffwave/stencil.hpp"

namespace diffwave {

double trapezoid(std::span<const double> f, double dx) {
  if (f.size() < 2) return 0.0;
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return sum * dx;
}

namespace {
double sum_squares(std::span<const double> f, double dx) {
  if (f.size() < 2) return 0.0;
  double sum = 0.5 * (f.front() * f.front() + f.back() * f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i] * f[i];
  return sum * dx;
}
}  // namespace

double l2_norm(std::span<const double> f, const Grid& grid) {
  require_aligned(f, grid);
  return std::sqrt(sum_squares(f, grid.dx));
}

double max_abs(std::span<const double> f) noexcept {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

double lp_norm(std::span<const double> f, const Grid& grid, double p) {
  require_aligned(f, grid);
  if (!std::isfinite(p)) return max_abs(f);
  if (p == 2.0) return l2_norm(f, grid);
  if (!(p >= 1.0)) throw ConfigError("lp_norm needs p >= 1");
  const std::size_t n = f.size();
  double sum = 0.5 * (std::pow(std::abs(f[0]), p) + std::pow(std::abs(f[n - 1]), p));
  for (std::size_t i = 1; i + 1 < n; ++i) sum += std::pow(std::abs(f[i]), p);
  return std::pow(sum * grid.dx, 1.0 / p);
}

double sobolev_norm(std::span<const double> f, const Grid& grid, int m) {
  if (m < 0 || m > 2) throw ConfigError("sobolev_norm supports m in {0, 1, 2}");
  require_aligned(f, grid);
  double total = sum_squares(f, grid.dx);
  if (m >= 1) total += sum_squares(dx1(f, grid), grid.dx);
  if (m >= 2) total += sum_squares(dx2(f, grid), grid.dx);
  return std::sqrt(total);
}

}  // namespace diffwave
