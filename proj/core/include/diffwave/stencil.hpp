#pragma once

#include <span>

#include "diffwave/grid.hpp"

namespace diffwave {

/// First derivative: second-order central differences in the interior and
/// three-point one-sided differences at both ends.
Field dx1(std::span<const double> f, const Grid& grid);

/// Second derivative: three-point stencil in the interior and second-order
/// four-point one-sided stencils at both ends (three-point when n == 3).
Field dx2(std::span<const double> f, const Grid& grid);

// Second-order one-sided derivatives at node 0.
double dx1_left(std::span<const double> f, double dx);
double dx2_left(std::span<const double> f, double dx);
double dx3_left(std::span<const double> f, double dx);  // needs 5 nodes

}  // namespace diffwave
