#include "diffwave/tridiag.hpp"

#include <cmath>
#include <sstream>

#include "diffwave/error.hpp"

namespace diffwave {

namespace {
constexpr double kPivotFloor = 1e-14;

void check_sizes(std::size_t n, std::size_t l, std::size_t d, std::size_t u) {
  if (n == 0 || l != n || d != n || u != n) {
    throw ConfigError("tridiagonal arrays must share a non-zero length");
  }
}

double check_pivot(double pivot, double row_scale, std::size_t row) {
  if (!(std::abs(pivot) >= kPivotFloor * row_scale) || row_scale == 0.0) {
    std::ostringstream os;
    os << "singular tridiagonal system: pivot " << pivot << " at row " << row;
    throw NumericalError(os.str());
  }
  return pivot;
}
}  // namespace

TridiagonalFactorization::TridiagonalFactorization(std::span<const double> lower,
                                                   std::span<const double> diag,
                                                   std::span<const double> upper) {
  const std::size_t n = diag.size();
  check_sizes(n, lower.size(), diag.size(), upper.size());
  lower_.assign(lower.begin(), lower.end());
  inv_pivot_.resize(n);
  c_prime_.assign(n, 0.0);

  auto row_scale = [&](std::size_t i) {
    return std::abs(i > 0 ? lower[i] : 0.0) + std::abs(diag[i]) +
           std::abs(i + 1 < n ? upper[i] : 0.0);
  };

  double pivot = check_pivot(diag[0], row_scale(0), 0);
  inv_pivot_[0] = 1.0 / pivot;
  if (n > 1) c_prime_[0] = upper[0] * inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) {
    pivot = check_pivot(diag[i] - lower[i] * c_prime_[i - 1], row_scale(i), i);
    inv_pivot_[i] = 1.0 / pivot;
    if (i + 1 < n) c_prime_[i] = upper[i] * inv_pivot_[i];
  }
}

void TridiagonalFactorization::solve_in_place(std::span<double> rhs) const {
  const std::size_t n = inv_pivot_.size();
  if (rhs.size() != n) throw ConfigError("right-hand side has the wrong length");
  rhs[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) {
    rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_pivot_[i];
  }
  for (std::size_t i = n - 1; i > 0; --i) rhs[i - 1] -= c_prime_[i - 1] * rhs[i];
}

std::vector<double> tridiag_solve(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs) {
  check_sizes(diag.size(), lower.size(), diag.size(), upper.size());
  if (rhs.size() != diag.size()) throw ConfigError("right-hand side has the wrong length");
  TridiagonalFactorization factor(lower, diag, upper);
  std::vector<double> x(rhs.begin(), rhs.end());
  factor.solve_in_place(x);
  return x;
}

}  // namespace diffwave
