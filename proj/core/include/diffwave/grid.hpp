#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace diffwave {

/// Uniform 1D grid with nodes x_i = x0 + i * dx, i = 0..n-1.
struct Grid {
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 3;

  double x(std::size_t i) const noexcept { return x0 + static_cast<double>(i) * dx; }
  double x_last() const noexcept { return x(n - 1); }
  double length() const noexcept { return static_cast<double>(n - 1) * dx; }
  std::vector<double> nodes() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Grid with n nodes spanning [x0, x0 + length]. Throws ConfigError when
/// n < 3 or length <= 0.
Grid build_grid(double x0, double length, std::size_t n);

/// Grid spanning [x0, x0 + length] whose spacing is the largest value not
/// exceeding max_dx.
Grid build_grid_with_spacing(double x0, double length, double max_dx);

/// Nodal values aligned to a Grid.
using Field = std::vector<double>;

template <class Fn>
Field sample(const Grid& grid, Fn&& fn) {
  Field out(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) out[i] = fn(grid.x(i));
  return out;
}

/// Throws ConfigError when the field length differs from grid.n.
void require_aligned(std::span<const double> f, const Grid& grid);

bool all_finite(std::span<const double> f) noexcept;

/// Grid state pair at one time instant.
struct State {
  Field u;    // bacteria density
  Field rho;  // chemical concentration
  double t = 0.0;
};

}  // namespace diffwave
