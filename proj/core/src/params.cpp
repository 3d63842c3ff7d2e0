#include "diffwave/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "diffwave/error.hpp"

namespace diffwave {

double ModelParams::degeneracy_bound() const noexcept {
  if (kappa == 0.0) return std::numeric_limits<double>::infinity();
  return a * lambda / (kappa * mu);
}

double ModelParams::wave_strength() const noexcept {
  return std::abs(rho_plus() - rho_minus()) + std::abs(u_plus) + std::abs(u_minus);
}

void ModelParams::validate() const {
  auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream os;
      os << name << " must be positive and finite (got " << v << ")";
      throw ConfigError(os.str());
    }
  };
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(lambda, "lambda");
  require_positive(mu, "mu");
  // kappa = 0 decouples the system; it is the linear-diffusion oracle limit.
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    std::ostringstream os;
    os << "kappa must be non-negative and finite (got " << kappa << ")";
    throw ConfigError(os.str());
  }
  if (!std::isfinite(u_minus) || !std::isfinite(u_plus)) {
    throw ConfigError("far-field states must be finite");
  }
  const double bound = degeneracy_bound();
  for (auto [v, name] : {std::pair{u_minus, "u_minus"}, std::pair{u_plus, "u_plus"}}) {
    if (!(std::abs(v) < bound)) {
      std::ostringstream os;
      os << "|" << name << "| = " << std::abs(v)
         << " violates |u| < a*lambda/(kappa*mu) = " << bound;
      throw ConfigError(os.str());
    }
  }
}

}  // namespace diffwave
