#pragma once

#include <span>

#include "diffwave/grid.hpp"

namespace diffwave {

/// Trapezoidal integral of f over the grid span.
double trapezoid(std::span<const double> f, double dx);

/// (int f^2 dx)^{1/2} by the trapezoidal rule.
double l2_norm(std::span<const double> f, const Grid& grid);

/// Discrete L^p norm; p = 1 and p = 2 use the trapezoidal rule, any
/// non-finite p is the max norm.
double lp_norm(std::span<const double> f, const Grid& grid, double p);

double max_abs(std::span<const double> f) noexcept;

/// H^m norm (sum_{k<=m} ||d^k f||^2)^{1/2} for m in {0, 1, 2}; the second
/// derivative uses dx2 directly.
double sobolev_norm(std::span<const double> f, const Grid& grid, int m);

}  // namespace diffwave
