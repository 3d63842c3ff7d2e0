#include "diffwave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diffwave/error.hpp"
#include "diffwave/power_law.hpp"

namespace diffwave {

namespace {

// The ODE is integrated in conservative form for (phi, psi) with psi = f(phi) phi':
//   phi' = psi / f(phi),   psi' = -(xi / 2) psi / f(phi).
struct OdeState {
  double phi;
  double psi;
};

struct DirectionResult {
  OdeState end;
  bool halted = false;
};

class ProfileOde {
 public:
  explicit ProfileOde(const ModelParams& params) : a_(params.a), c_(params.coupling()) {}

  double f(double phi) const noexcept { return a_ - c_ * phi; }

  // Returns false when f leaves the positive range at one of the stages.
  bool rk4(double xi, double h, OdeState& s) const noexcept {
    double k1p, k1s, k2p, k2s, k3p, k3s, k4p, k4s;
    if (!rhs(xi, s, k1p, k1s)) return false;
    OdeState t{s.phi + 0.5 * h * k1p, s.psi + 0.5 * h * k1s};
    if (!rhs(xi + 0.5 * h, t, k2p, k2s)) return false;
    t = {s.phi + 0.5 * h * k2p, s.psi + 0.5 * h * k2s};
    if (!rhs(xi + 0.5 * h, t, k3p, k3s)) return false;
    t = {s.phi + h * k3p, s.psi + h * k3s};
    if (!rhs(xi + h, t, k4p, k4s)) return false;
    const OdeState next{s.phi + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
                        s.psi + h / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)};
    if (!(f(next.phi) > 0.0)) return false;
    s = next;
    return true;
  }

  // Integrates `steps` steps of signed size h from xi = 0. `sink` receives
  // (step index, state) after each step.
  template <class Sink>
  DirectionResult integrate(OdeState start, double h, std::size_t steps, Sink&& sink) const {
    DirectionResult out{start, false};
    for (std::size_t k = 0; k < steps; ++k) {
      const double xi = static_cast<double>(k) * h;
      if (!rk4(xi, h, out.end)) {
        out.halted = true;
        return out;
      }
      if (!std::isfinite(out.end.phi) || !std::isfinite(out.end.psi)) {
        throw NumericalError("profile ODE produced non-finite values");
      }
      sink(k + 1, out.end);
    }
    return out;
  }

  DirectionResult endpoint(double phi0, double slope0, double h, std::size_t steps) const {
    return integrate(OdeState{phi0, f(phi0) * slope0}, h, steps,
                     [](std::size_t, const OdeState&) {});
  }

 private:
  bool rhs(double xi, const OdeState& s, double& dphi, double& dpsi) const noexcept {
    const double fv = f(s.phi);
    if (!(fv > 0.0)) return false;
    dphi = s.psi / fv;
    dpsi = -0.5 * xi * s.psi / fv;
    return true;
  }

  double a_;
  double c_;
};

std::size_t steps_for(double span, double dxi) {
  return static_cast<std::size_t>(std::llround(std::abs(span) / dxi));
}

void validate_tol(double tol) {
  if (!(tol > 0.0) || tol > 1e-3) {
    std::ostringstream os;
    os << "profile tolerance must lie in (0, 1e-3] (got " << tol << ")";
    throw ConfigError(os.str());
  }
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Layout shared by both profile kinds: side = number of dxi steps per direction.
struct XiLayout {
  double dxi;
  std::size_t side;
};

XiLayout layout_for(const ModelParams& params, double tol, const ShootingOptions& options) {
  if (!(options.dxi_fraction > 0.0) || options.dxi_fraction > 0.1) {
    throw ConfigError("dxi_fraction must lie in (0, 0.1]");
  }
  const double xi_max = profile_xi_max(params, tol);
  const double dxi = options.dxi_fraction * xi_max;
  return {dxi, steps_for(xi_max, dxi)};
}

Profile constant_profile(ProfileDomain domain, double value, const ModelParams& params,
                         const XiLayout& layout) {
  Profile p;
  p.domain = domain;
  const std::size_t n = domain == ProfileDomain::kFullLine ? 2 * layout.side + 1 : layout.side + 1;
  const double x0 = domain == ProfileDomain::kFullLine
                        ? -static_cast<double>(layout.side) * layout.dxi
                        : 0.0;
  p.xi_grid = Grid{x0, layout.dxi, n};
  p.phi.assign(n, value);
  p.dphi.assign(n, 0.0);
  p.u_minus = params.u_minus;
  p.u_plus = params.u_plus;
  p.anchor = {0.0, value, 0.0};
  return p;
}

Profile profile_from_trajectory(ProfileDomain domain, const ModelParams& params,
                                const ProfileTrajectory& traj, double dxi) {
  Profile p;
  p.domain = domain;
  p.xi_grid = Grid{traj.xi.front(), dxi, traj.xi.size()};
  p.phi = traj.phi;
  p.dphi = traj.dphi;
  p.u_minus = params.u_minus;
  p.u_plus = params.u_plus;
  return p;
}

}  // namespace

bool Profile::is_constant() const noexcept {
  return std::all_of(dphi.begin(), dphi.end(), [](double v) { return v == 0.0; });
}

double Profile::left_state() const noexcept {
  return domain == ProfileDomain::kHalfLine && beta ? *beta : u_minus;
}

ProfileTrajectory integrate_profile_ode(const ModelParams& params, double phi0, double slope0,
                                        double xi_min, double xi_max, double dxi) {
  if (!(dxi > 0.0)) throw ConfigError("profile step dxi must be positive");
  if (!(xi_min <= 0.0) || !(xi_max >= 0.0)) {
    throw ConfigError("profile span must contain xi = 0");
  }
  const ProfileOde ode(params);
  if (!(ode.f(phi0) > 0.0)) {
    std::ostringstream os;
    os << "degenerate diffusivity f(phi0) = " << ode.f(phi0) << " <= 0";
    throw ConfigError(os.str());
  }
  const std::size_t left = steps_for(xi_min, dxi);
  const std::size_t right = steps_for(xi_max, dxi);

  std::vector<OdeState> lstates(left + 1), rstates(right + 1);
  const OdeState start{phi0, ode.f(phi0) * slope0};
  lstates[0] = rstates[0] = start;
  std::size_t lcount = 0, rcount = 0;
  const auto lres = ode.integrate(start, -dxi, left, [&](std::size_t k, const OdeState& s) {
    lstates[k] = s;
    lcount = k;
  });
  const auto rres = ode.integrate(start, dxi, right, [&](std::size_t k, const OdeState& s) {
    rstates[k] = s;
    rcount = k;
  });

  ProfileTrajectory out;
  out.halted_left = lres.halted;
  out.halted_right = rres.halted;
  const std::size_t total = lcount + rcount + 1;
  out.xi.reserve(total);
  out.phi.reserve(total);
  out.dphi.reserve(total);
  auto push = [&](double xi, const OdeState& s) {
    out.xi.push_back(xi);
    out.phi.push_back(s.phi);
    out.dphi.push_back(s.psi / ode.f(s.phi));
  };
  for (std::size_t k = lcount; k > 0; --k) push(-static_cast<double>(k) * dxi, lstates[k]);
  push(0.0, start);
  for (std::size_t k = 1; k <= rcount; ++k) push(static_cast<double>(k) * dxi, rstates[k]);
  return out;
}

double profile_xi_max(const ModelParams& params, double tol) {
  validate_tol(tol);
  const double f_max =
      params.a + params.coupling() * std::max(std::abs(params.u_minus), std::abs(params.u_plus));
  return std::sqrt(4.0 * f_max * std::log(10.0 / tol));
}

Profile solve_profile_cauchy(const ModelParams& params, double tol,
                             const ShootingOptions& options) {
  params.validate();
  validate_tol(tol);
  const XiLayout layout = layout_for(params, tol, options);
  const double u_minus = params.u_minus;
  const double u_plus = params.u_plus;
  if (u_minus == u_plus) {
    return constant_profile(ProfileDomain::kFullLine, u_plus, params, layout);
  }

  const ProfileOde ode(params);
  const int sigma = sign_of(u_plus - u_minus);
  const double inner_tol = 1e-2 * tol;
  const double width = std::abs(u_plus - u_minus);
  int rounds = 0;

  // Left limit as a function of the slope magnitude m; overshooting (or
  // reaching f <= 0) makes g(m) = sigma (u_- - L(m)) positive.
  auto left_gap = [&](double phi0, double m, double& limit) {
    const auto r = ode.endpoint(phi0, sigma * m, -layout.dxi, layout.side);
    if (r.halted) {
      limit = std::numeric_limits<double>::quiet_NaN();
      return std::numeric_limits<double>::infinity();
    }
    limit = r.end.phi;
    return sigma * (u_minus - r.end.phi);
  };

  auto slope_for = [&](double phi0) {
    double limit = phi0;
    if (phi0 == u_minus) return 0.0;
    double lo = 0.0;
    double hi = width;
    int expand = 0;
    while (left_gap(phi0, hi, limit) <= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++expand > 200) throw ShootingError("could not bracket the anchor slope");
    }
    for (int k = 0; k < options.max_rounds; ++k) {
      ++rounds;
      const double mid = 0.5 * (lo + hi);
      const double g = left_gap(phi0, mid, limit);
      // Only undershooting slopes are accepted, so the profile stays inside
      // the range of the end states.
      if (g <= 0.0 && -g <= inner_tol) return mid;
      (g > 0.0 ? hi : lo) = mid;
      if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return lo;
    }
    std::ostringstream os;
    os << "inner bisection on phi'(0) did not converge for phi(0) = " << phi0 << " (bracket ["
       << lo << ", " << hi << "])";
    throw ShootingError(os.str());
  };

  auto right_limit = [&](double phi0, double m) {
    const auto r = ode.endpoint(phi0, sigma * m, layout.dxi, layout.side);
    return r.halted ? sigma * std::numeric_limits<double>::infinity() : r.end.phi;
  };

  // Outer bisection on phi(0) between the end states.
  double lo = u_minus;
  double hi = u_plus;
  double phi0 = 0.5 * (lo + hi);
  double slope = 0.0;
  bool converged = false;
  for (int k = 0; k < options.max_rounds; ++k) {
    ++rounds;
    phi0 = 0.5 * (lo + hi);
    slope = slope_for(phi0);
    const double h = sigma * (right_limit(phi0, slope) - u_plus);
    if (h <= 0.0 && -h <= 0.5 * tol) {
      converged = true;
      break;
    }
    (h > 0.0 ? hi : lo) = phi0;
    if (std::abs(hi - lo) <= 4.0 * std::numeric_limits<double>::epsilon() * width) {
      phi0 = lo;
      slope = slope_for(phi0);
      converged = -sigma * (right_limit(phi0, slope) - u_plus) <= 0.5 * tol;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "outer bisection on phi(0) did not reach tol " << tol << " (bracket [" << lo << ", "
       << hi << "])";
    throw ShootingError(os.str());
  }

  const double span = static_cast<double>(layout.side) * layout.dxi;
  const auto traj = integrate_profile_ode(params, phi0, sigma * slope, -span, span, layout.dxi);
  if (traj.halted_left || traj.halted_right) {
    throw ShootingError("final profile trajectory reached f(phi) <= 0");
  }
  Profile p = profile_from_trajectory(ProfileDomain::kFullLine, params, traj, layout.dxi);
  p.anchor = {0.0, phi0, sigma * slope};
  p.left_residual = std::abs(p.phi.front() - u_minus);
  p.right_residual = std::abs(p.phi.back() - u_plus);
  p.shooting_rounds = rounds;
  if (p.left_residual > tol || p.right_residual > tol) {
    std::ostringstream os;
    os << "profile far-field residuals (" << p.left_residual << ", " << p.right_residual
       << ") exceed tol " << tol;
    throw ShootingError(os.str());
  }
  return p;
}

Profile solve_profile_halfline(const ModelParams& params, double beta, double tol,
                               const ShootingOptions& options) {
  params.validate();
  validate_tol(tol);
  const double lo_state = std::min(params.u_minus, params.u_plus);
  const double hi_state = std::max(params.u_minus, params.u_plus);
  if (!(beta >= lo_state && beta <= hi_state)) {
    std::ostringstream os;
    os << "beta = " << beta << " lies outside [" << lo_state << ", " << hi_state << "]";
    throw ConfigError(os.str());
  }
  const XiLayout layout = layout_for(params, tol, options);
  const double u_plus = params.u_plus;
  if (beta == u_plus) {
    Profile p = constant_profile(ProfileDomain::kHalfLine, u_plus, params, layout);
    p.beta = beta;
    return p;
  }

  const ProfileOde ode(params);
  const int sigma = sign_of(u_plus - beta);
  const double width = std::abs(u_plus - beta);
  auto gap = [&](double m) {
    const auto r = ode.endpoint(beta, sigma * m, layout.dxi, layout.side);
    if (r.halted) return std::numeric_limits<double>::infinity();
    return sigma * (r.end.phi - u_plus);
  };

  double lo = 0.0;
  double hi = width;
  int rounds = 0;
  while (gap(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++rounds > 200) throw ShootingError("could not bracket the half-line anchor slope");
  }
  double slope = 0.5 * (lo + hi);
  bool converged = false;
  for (int k = 0; k < options.max_rounds; ++k) {
    ++rounds;
    slope = 0.5 * (lo + hi);
    const double g = gap(slope);
    if (g <= 0.0 && -g <= 0.5 * tol) {
      converged = true;
      break;
    }
    (g > 0.0 ? hi : lo) = slope;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      slope = lo;
      converged = -gap(lo) <= 0.5 * tol;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "half-line bisection on phi'(0) did not reach tol " << tol << " (bracket [" << lo
       << ", " << hi << "])";
    throw ShootingError(os.str());
  }

  const double span = static_cast<double>(layout.side) * layout.dxi;
  const auto traj = integrate_profile_ode(params, beta, sigma * slope, 0.0, span, layout.dxi);
  if (traj.halted_right) throw ShootingError("final profile trajectory reached f(phi) <= 0");
  Profile p = profile_from_trajectory(ProfileDomain::kHalfLine, params, traj, layout.dxi);
  p.beta = beta;
  p.anchor = {0.0, beta, sigma * slope};
  p.left_residual = 0.0;
  p.right_residual = std::abs(p.phi.back() - u_plus);
  p.shooting_rounds = rounds;
  return p;
}

Envelope fit_envelope(const Profile& profile) {
  if (profile.is_constant()) throw ConfigError("a constant profile has no envelope");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < profile.dphi.size(); ++i) {
    const double d = std::abs(profile.dphi[i]);
    if (d > 1e-12) {
      const double xi = profile.xi_grid.x(i);
      xs.push_back(xi * xi);
      ys.push_back(std::log(d));
    }
  }
  if (xs.size() < 3) throw NumericalError("too few samples for an envelope fit");

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  if (!(slope < 0.0)) throw NumericalError("envelope fit produced a non-decaying Gaussian rate");

  Envelope env;
  env.c0 = -slope;
  env.c_amp = std::exp(intercept) / std::abs(profile.u_plus - profile.u_minus);
  env.r2 = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  return env;
}

double profile_ode_residual(const ModelParams& params, const Profile& profile) {
  const std::size_t n = profile.phi.size();
  if (n < 5) return 0.0;
  std::vector<double> flux(n);
  for (std::size_t i = 0; i < n; ++i) {
    flux[i] = params.diffusivity(profile.phi[i]) * profile.dphi[i];
  }
  const double h = profile.xi_grid.dx;
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double dflux =
        (-flux[i + 2] + 8.0 * flux[i + 1] - 8.0 * flux[i - 1] + flux[i - 2]) / (12.0 * h);
    const double r = dflux + 0.5 * profile.xi_grid.x(i) * profile.dphi[i];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace diffwave
