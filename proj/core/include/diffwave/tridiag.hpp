#pragma once

#include <span>
#include <vector>

namespace diffwave {

/// Solves A x = rhs for tridiagonal A by the Thomas algorithm.
///
/// All four arrays have length n; lower[0] and upper[n-1] are ignored. Throws
/// NumericalError when an elimination pivot falls below 1e-14 times the
/// magnitude of its row.
std::vector<double> tridiag_solve(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs);

/// Forward-eliminated form of a fixed tridiagonal matrix, for repeated solves
/// with different right-hand sides.
class TridiagonalFactorization {
 public:
  TridiagonalFactorization() = default;
  TridiagonalFactorization(std::span<const double> lower, std::span<const double> diag,
                           std::span<const double> upper);

  std::size_t size() const noexcept { return inv_pivot_.size(); }

  /// Overwrites rhs with the solution.
  void solve_in_place(std::span<double> rhs) const;

 private:
  std::vector<double> lower_;
  std::vector<double> inv_pivot_;
  std::vector<double> c_prime_;
};

}  // namespace diffwave
