#include "diffwave/wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"
#include "diffwave/power_law.hpp"

namespace diffwave {

namespace {

// Derivatives of phi from the profile ODE written as
//   f phi'' = c phi'^2 - (xi/2) phi',   f = a - c phi,  c = kappa mu / lambda,
// and its xi-derivatives.
double second_derivative(double f, double c, double xi, double d1) {
  return (c * d1 * d1 - 0.5 * xi * d1) / f;
}

void validate_orders(int k, int j) {
  if (k < 0 || j < 0 || k + 2 * j > 4) {
    std::ostringstream os;
    os << "unsupported derivative orders (k, j) = (" << k << ", " << j << "); need k + 2j <= 4";
    throw ConfigError(os.str());
  }
}

}  // namespace

DiffusionWave::DiffusionWave(Profile profile, ModelParams params)
    : profile_(std::move(profile)), params_(params) {
  params_.validate();
  if (profile_.phi.size() != profile_.xi_grid.n || profile_.dphi.size() != profile_.xi_grid.n) {
    throw ConfigError("profile samples are not aligned to the xi grid");
  }
}

std::array<double, 5> DiffusionWave::jet(double xi) const {
  const Profile& p = profile_;
  const Grid& g = p.xi_grid;
  if (p.domain == ProfileDomain::kHalfLine && xi < 0.0) {
    throw ConfigError("half-line wave evaluated at x < 0");
  }
  if (xi <= g.x0) return {p.phi.front(), 0.0, 0.0, 0.0, 0.0};
  if (xi >= g.x_last()) return {p.phi.back(), 0.0, 0.0, 0.0, 0.0};

  const double c = params_.coupling();
  const double h = g.dx;
  const auto cell = std::min<std::size_t>(static_cast<std::size_t>((xi - g.x0) / h), g.n - 2);
  const double s = (xi - g.x(cell)) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;

  const double phi_l = p.phi[cell], phi_r = p.phi[cell + 1];
  const double d1_l = p.dphi[cell], d1_r = p.dphi[cell + 1];
  const double d2_l = second_derivative(params_.diffusivity(phi_l), c, g.x(cell), d1_l);
  const double d2_r = second_derivative(params_.diffusivity(phi_r), c, g.x(cell + 1), d1_r);

  const double phi = h00 * phi_l + h10 * h * d1_l + h01 * phi_r + h11 * h * d1_r;
  const double d1 = h00 * d1_l + h10 * h * d2_l + h01 * d1_r + h11 * h * d2_r;

  const double f = params_.diffusivity(phi);
  const double d2 = second_derivative(f, c, xi, d1);
  // f phi''' = 3c phi' phi'' - phi'/2 - (xi/2) phi''
  const double d3 = (3.0 * c * d1 * d2 - 0.5 * d1 - 0.5 * xi * d2) / f;
  // f phi'''' = 4c phi' phi''' + 3c phi''^2 - phi'' - (xi/2) phi'''
  const double d4 = (4.0 * c * d1 * d3 + 3.0 * c * d2 * d2 - d2 - 0.5 * xi * d3) / f;
  return {phi, d1, d2, d3, d4};
}

double DiffusionWave::u(double x, double t, int k, int j) const {
  validate_orders(k, j);
  if (!(t >= 0.0)) throw ConfigError("wave evaluated at t < 0");
  const double tau = 1.0 + t;
  const double xi = x / std::sqrt(tau);

  // d^k_x u_bar = tau^{-k/2} phi^{(k)}(xi). Each d_t maps a term
  // coef tau^{-p} xi^q phi^{(r)} to
  //   coef (-p - q/2) tau^{-p-1} xi^q phi^{(r)} - (coef/2) tau^{-p-1} xi^{q+1} phi^{(r+1)}.
  struct Term {
    double coef;
    double p;
    int q;
    int r;
  };
  std::vector<Term> terms{{1.0, 0.5 * k, 0, k}};
  for (int step = 0; step < j; ++step) {
    std::vector<Term> next;
    next.reserve(terms.size() * 2);
    for (const Term& term : terms) {
      const double a = term.coef * (-term.p - 0.5 * term.q);
      if (a != 0.0) next.push_back({a, term.p + 1.0, term.q, term.r});
      next.push_back({-0.5 * term.coef, term.p + 1.0, term.q + 1, term.r + 1});
    }
    terms = std::move(next);
  }

  const auto derivs = jet(xi);
  double sum = 0.0;
  for (const Term& term : terms) {
    sum += term.coef * std::pow(tau, -term.p) * std::pow(xi, term.q) * derivs[term.r];
  }
  return sum;
}

double DiffusionWave::rho(double x, double t, int k, int j) const {
  return params_.mu / params_.lambda * u(x, t, k, j);
}

double wave_eval(const DiffusionWave& wave, double x, double t, int k, int j) {
  return wave.u(x, t, k, j);
}

double rho_bar_eval(const DiffusionWave& wave, double x, double t, int k, int j) {
  return wave.rho(x, t, k, j);
}

DecayCheck check_decay_table(const DiffusionWave& wave, std::span<const double> times, int k,
                             int j, double p) {
  validate_orders(k, j);
  if (k + j < 1) throw ConfigError("decay table needs k + j >= 1");
  if (!(p >= 1.0)) throw ConfigError("decay table needs p >= 1 (or infinity)");
  if (times.size() < 3) throw ConfigError("decay table needs at least three times");
  const auto [tmin_it, tmax_it] = std::minmax_element(times.begin(), times.end());
  if (!(*tmin_it >= 0.0)) throw ConfigError("decay table times must be non-negative");
  if ((1.0 + *tmax_it) < 10.0 * (1.0 + *tmin_it)) {
    throw ConfigError("decay table times must span at least one decade in 1 + t");
  }

  DecayCheck out;
  out.predicted_exponent = -0.5 * k - j + (std::isfinite(p) ? 0.5 / p : 0.0);

  const Profile& prof = wave.profile();
  const double root_max = std::sqrt(1.0 + *tmax_it);
  const double root_min = std::sqrt(1.0 + *tmin_it);
  const double reach = std::max(std::abs(prof.xi_min()), std::abs(prof.xi_max()));
  const double width = std::max(10.0 * root_max, 1.02 * reach * root_max);
  const double max_dx = root_min * prof.xi_grid.dx;
  const bool half = prof.domain == ProfileDomain::kHalfLine;
  const Grid grid = build_grid_with_spacing(half ? 0.0 : -width, half ? width : 2.0 * width,
                                            max_dx);

  std::vector<double> norms;
  norms.reserve(times.size());
  Field values(grid.n);
  for (double t : times) {
    for (std::size_t i = 0; i < grid.n; ++i) values[i] = wave.u(grid.x(i), t, k, j);
    norms.push_back(lp_norm(values, grid, p));
  }
  if (std::all_of(norms.begin(), norms.end(), [](double v) { return v == 0.0; })) {
    out.degenerate = true;
    out.observed_exponent = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const PowerLawFit fit = fit_power_law(times, norms);
  out.observed_exponent = fit.exponent;
  out.r2 = fit.r2;
  return out;
}

}  // namespace diffwave
