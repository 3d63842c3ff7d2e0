#include "diffwave/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"
#include "diffwave/stencil.hpp"

namespace diffwave {

WeightValue weight_eval(const WeightKernel& kernel, double x, double t) {
  const double tau = 1.0 + t;
  const double a = kernel.alpha;
  WeightValue v;
  v.omega = std::exp(-a * x * x / tau) / std::sqrt(tau);
  const double scale = 0.5 * std::sqrt(std::numbers::pi / a);
  const double e = std::erf(std::sqrt(a) * x / std::sqrt(tau));
  v.g = kernel.domain == ProfileDomain::kFullLine ? scale * (1.0 + e) : scale * e;
  return v;
}

double weight_primitive_sup(const WeightKernel& kernel) {
  const double full = std::sqrt(std::numbers::pi / kernel.alpha);
  return kernel.domain == ProfileDomain::kFullLine ? full : 0.5 * full;
}

double WeightIdentityReport::max_residual() const noexcept {
  return std::max(heat_residual, primitive_residual);
}

WeightIdentityReport weight_identity_check(const WeightKernel& kernel, const Grid& grid,
                                           double t) {
  if (!(t > 0.0)) throw ConfigError("weight_identity_check needs t > 0");
  if (!(kernel.alpha > 0.0)) throw ConfigError("weight alpha must be positive");
  const double h = grid.dx;
  const double k = std::min(h, 0.5 * t);
  WeightIdentityReport r;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    const WeightValue c = weight_eval(kernel, x, t);
    const WeightValue l = weight_eval(kernel, x - h, t);
    const WeightValue rt = weight_eval(kernel, x + h, t);
    const WeightValue early = weight_eval(kernel, x, t - k);
    const WeightValue late = weight_eval(kernel, x, t + k);
    const double omega_t = (late.omega - early.omega) / (2.0 * k);
    const double omega_xx = (rt.omega - 2.0 * c.omega + l.omega) / (h * h);
    const double omega_x = (rt.omega - l.omega) / (2.0 * h);
    const double g_t = (late.g - early.g) / (2.0 * k);
    r.heat_residual = std::max(r.heat_residual, std::abs(omega_t - omega_xx / (4.0 * kernel.alpha)));
    r.primitive_residual =
        std::max(r.primitive_residual, std::abs(4.0 * kernel.alpha * g_t - omega_x));
  }
  return r;
}

double weighted_spacetime_integral(const Grid& grid, const std::vector<double>& t,
                                   const std::vector<Field>& h, const WeightKernel& kernel) {
  if (t.size() != h.size()) throw ConfigError("times and fields differ in length");
  if (t.size() < 2) throw ConfigError("weighted integral needs at least 2 snapshots");
  std::vector<double> inner(t.size());
  Field integrand(grid.n);
  for (std::size_t m = 0; m < t.size(); ++m) {
    require_aligned(h[m], grid);
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double om = weight_eval(kernel, grid.x(i), t[m]).omega;
      integrand[i] = h[m][i] * h[m][i] * om * om;
    }
    inner[m] = trapezoid(integrand, grid.dx);
  }
  double total = 0.0;
  for (std::size_t m = 1; m < t.size(); ++m) {
    total += 0.5 * (t[m] - t[m - 1]) * (inner[m] + inner[m - 1]);
  }
  return total;
}

double weighted_spacetime_integral(const PerturbationHistory& history, Component which,
                                   const WeightKernel& kernel) {
  return weighted_spacetime_integral(history.grid, history.t,
                                     which == Component::kW ? history.w : history.z, kernel);
}

WeightedEstimate check_weighted_estimate(const PerturbationHistory& history,
                                         const WeightKernel& kernel) {
  WeightedEstimate e;
  e.lhs = weighted_spacetime_integral(history, Component::kZ, kernel);
  std::vector<double> grad(history.t.size());
  for (std::size_t m = 0; m < history.t.size(); ++m) {
    const double zx = l2_norm(dx1(history.z[m], history.grid), history.grid);
    const double wx = l2_norm(dx1(history.w[m], history.grid), history.grid);
    grad[m] = zx * zx + wx * wx;
  }
  double integral = 0.0;
  for (std::size_t m = 1; m < history.t.size(); ++m) {
    integral += 0.5 * (history.t[m] - history.t[m - 1]) * (grad[m] + grad[m - 1]);
  }
  const double z0 = l2_norm(history.z.front(), history.grid);
  e.rhs = integral + z0 * z0;
  if (e.rhs > 0.0) {
    e.ratio = e.lhs / e.rhs;
  } else if (e.lhs > 0.0) {
    e.inconsistent = true;
    e.ratio = std::numeric_limits<double>::infinity();
  }
  return e;
}

}  // namespace diffwave
