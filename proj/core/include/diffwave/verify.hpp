#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "diffwave/grid.hpp"
#include "diffwave/manufactured.hpp"

namespace diffwave {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // what it was compared against
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const noexcept;
};

struct VerifyOptions {
  MmsLadder ladder = default_mms_ladder();
  std::uint64_t seed = 20240601;
  int definiteness_trials = 1000;
  /// Replaces the second-derivative stencil used by the stencil exactness
  /// check; a test hook for fault injection.
  std::function<Field(std::span<const double>, const Grid&)> second_derivative;
};

/// Minimum of lambda w^2 / 2 + K z^2 / 2 - mu w z over the unit circle, by an
/// angular scan with local refinement.
double unit_circle_minimum(double lambda, double mu, double K);

/// Runs the bundled oracle checks: stencil exactness on polynomials, the
/// kappa = 0 heat comparison and its refinement factor, the manufactured
/// ladder, the weight identities and sup g, positive-definiteness against the
/// angular scan, and the tridiagonal solver against dense elimination.
VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace diffwave
