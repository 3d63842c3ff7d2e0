#include "diffwave/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"
#include "diffwave/power_law.hpp"
#include "diffwave/stencil.hpp"

namespace diffwave {

std::pair<Field, Field> perturbation(const State& state, const Grid& grid,
                                     const ProblemKind& kind, const ModelParams& params) {
  require_aligned(state.u, grid);
  require_aligned(state.rho, grid);
  Field w(grid.n), z(grid.n);
  if (const DiffusionWave* wave = reference_wave(kind)) {
    for (std::size_t i = 0; i < grid.n; ++i) {
      const double x = grid.x(i);
      const double ubar = wave->u(x, state.t);
      z[i] = state.u[i] - ubar;
      w[i] = state.rho[i] - params.darcy(ubar);
    }
  } else {
    const double rho_plus = params.rho_plus();
    for (std::size_t i = 0; i < grid.n; ++i) {
      z[i] = state.u[i] - params.u_plus;
      w[i] = state.rho[i] - rho_plus;
    }
  }
  return {std::move(w), std::move(z)};
}

PerturbationHistory perturbation_history(const RunResult& run, const ProblemKind& kind,
                                         const ModelParams& params) {
  PerturbationHistory h;
  h.grid = run.grid;
  h.half_line = is_half_line(kind);
  h.lambda = params.lambda;
  h.mu = params.mu;
  for (const State& s : run.snapshots) {
    auto [w, z] = perturbation(s, run.grid, kind, params);
    h.t.push_back(s.t);
    h.w.push_back(std::move(w));
    h.z.push_back(std::move(z));
  }
  return h;
}

namespace {

Field combination(double lambda, const Field& w, double mu, const Field& z) {
  Field out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = lambda * w[i] - mu * z[i];
  return out;
}

// Second-order difference of snapshot fields in time at index m.
Field time_derivative(const std::vector<double>& t, const std::vector<Field>& f, std::size_t m) {
  const std::size_t n = t.size();
  std::size_t lo = m == 0 ? 0 : m - 1;
  std::size_t hi = m + 1 == n ? m : m + 1;
  if (lo == hi) return Field(f[m].size(), 0.0);
  const double span = t[hi] - t[lo];
  Field out(f[m].size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (f[hi][i] - f[lo][i]) / span;
  return out;
}

void accumulate(std::vector<double>& cum, const std::vector<double>& t,
                const std::vector<double>& integrand) {
  cum.assign(t.size(), 0.0);
  for (std::size_t m = 1; m < t.size(); ++m) {
    cum[m] = cum[m - 1] + 0.5 * (t[m] - t[m - 1]) * (integrand[m] + integrand[m - 1]);
  }
}

}  // namespace

std::vector<double> PerturbSeries::dissipation() const {
  std::vector<double> out(t.size());
  for (std::size_t m = 0; m < t.size(); ++m) {
    out[m] = cum_w[0][m] + cum_z[0][m] + cum_combo[0][m];
  }
  return out;
}

PerturbSeries norm_series(const PerturbationHistory& h) {
  const std::size_t n = h.t.size();
  if (n < 2) throw ConfigError("norm_series needs at least 2 snapshots");
  for (std::size_t m = 1; m < n; ++m) {
    if (!(h.t[m] > h.t[m - 1])) throw ConfigError("snapshot times must increase strictly");
  }
  const Grid& g = h.grid;
  PerturbSeries s;
  s.t = h.t;
  auto reserve = [n](std::vector<double>& v) { v.assign(n, 0.0); };
  for (int k = 0; k < 3; ++k) {
    reserve(s.w[k]);
    reserve(s.z[k]);
  }
  for (auto* v : {&s.w_t, &s.z_t, &s.w_xt, &s.z_xt, &s.combo, &s.combo_x, &s.combo_t, &s.w_max,
                  &s.z_max, &s.energy, &s.n_functional}) {
    reserve(*v);
  }

  // Squared integrands of the cumulative integrals, j = 0..2.
  std::array<std::vector<double>, 3> iw, iz, ic;
  for (int j = 0; j < 3; ++j) {
    reserve(iw[j]);
    reserve(iz[j]);
    reserve(ic[j]);
  }
  std::vector<double> ict(n, 0.0);

  for (std::size_t m = 0; m < n; ++m) {
    const Field& w = h.w[m];
    const Field& z = h.z[m];
    const Field w1 = dx1(w, g), z1 = dx1(z, g);
    const Field w2 = dx2(w, g), z2 = dx2(z, g);
    const Field w3 = dx1(w2, g), z3 = dx1(z2, g);
    const Field c = combination(h.lambda, w, h.mu, z);
    const Field c1 = dx1(c, g);
    const Field c2 = dx2(c, g);

    s.w[0][m] = l2_norm(w, g);
    s.w[1][m] = l2_norm(w1, g);
    s.w[2][m] = l2_norm(w2, g);
    s.z[0][m] = l2_norm(z, g);
    s.z[1][m] = l2_norm(z1, g);
    s.z[2][m] = l2_norm(z2, g);
    s.combo[m] = l2_norm(c, g);
    s.combo_x[m] = l2_norm(c1, g);
    s.w_max[m] = max_abs(w);
    s.z_max[m] = max_abs(z);

    const Field wt = time_derivative(h.t, h.w, m);
    const Field zt = time_derivative(h.t, h.z, m);
    s.w_t[m] = l2_norm(wt, g);
    s.z_t[m] = l2_norm(zt, g);
    s.w_xt[m] = l2_norm(dx1(wt, g), g);
    s.z_xt[m] = l2_norm(dx1(zt, g), g);
    const double ct = l2_norm(combination(h.lambda, wt, h.mu, zt), g);
    s.combo_t[m] = ct;

    const double tau = 1.0 + h.t[m];
    const double l3w = l2_norm(w3, g), l3z = l2_norm(z3, g), l2c = l2_norm(c2, g);
    iw[0][m] = s.w[1][m] * s.w[1][m];
    iz[0][m] = s.z[1][m] * s.z[1][m];
    ic[0][m] = s.combo[m] * s.combo[m];
    iw[1][m] = tau * s.w[2][m] * s.w[2][m];
    iz[1][m] = tau * s.z[2][m] * s.z[2][m];
    ic[1][m] = tau * s.combo_x[m] * s.combo_x[m];
    iw[2][m] = tau * tau * l3w * l3w;
    iz[2][m] = tau * tau * l3z * l3z;
    ic[2][m] = tau * tau * l2c * l2c;
    ict[m] = tau * tau * ct * ct;

    double e = 0.0, weight = 1.0;
    for (int k = 0; k < 3; ++k) {
      e += weight * (s.w[k][m] * s.w[k][m] + s.z[k][m] * s.z[k][m]);
      weight *= tau;
    }
    s.energy[m] = e;
    s.n_functional[m] = m == 0 ? e : std::max(s.n_functional[m - 1], e);
  }

  for (int j = 0; j < 3; ++j) {
    accumulate(s.cum_w[j], s.t, iw[j]);
    accumulate(s.cum_z[j], s.t, iz[j]);
    accumulate(s.cum_combo[j], s.t, ic[j]);
  }
  accumulate(s.cum_combo_t, s.t, ict);
  return s;
}

PerturbSeries norm_series(const RunResult& run, const ProblemKind& kind,
                          const ModelParams& params) {
  return norm_series(perturbation_history(run, kind, params));
}

RateFit fit_decay_rate(std::span<const double> times, std::span<const double> values,
                       double t_min, double t_max) {
  if (times.size() != values.size()) throw ConfigError("times and values differ in length");
  if (!(t_min < t_max)) throw ConfigError("fit window needs t_min < t_max");
  std::vector<double> ts, vs;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= t_min && times[i] <= t_max) {
      ts.push_back(times[i]);
      vs.push_back(values[i]);
    }
  }
  if (ts.size() < 8) {
    std::ostringstream os;
    os << "rate fit over [" << t_min << ", " << t_max << "] has " << ts.size()
       << " samples; at least 8 are needed";
    throw NumericalError(os.str());
  }
  const PowerLawFit p = fit_power_law(ts, vs);
  return RateFit{p.exponent, p.intercept, t_min, t_max, p.r2, p.samples};
}

BoundaryReport boundary_report(const PerturbationHistory& h, const ProblemKind& kind) {
  if (std::holds_alternative<CauchyKind>(kind)) {
    throw ConfigError("boundary_report applies to half-line problems only");
  }
  BoundaryReport r;
  r.dirichlet = std::holds_alternative<DirichletKind>(kind);
  if (h.grid.n < 5) throw ConfigError("boundary_report needs at least 5 grid nodes");
  const double dx = h.grid.dx;
  for (std::size_t m = 0; m < h.t.size(); ++m) {
    r.t.push_back(h.t[m]);
    if (r.dirichlet) {
      r.w_trace.push_back(std::abs(h.w[m][0]));
      r.z_trace.push_back(std::abs(h.z[m][0]));
      r.curvature.push_back(std::abs(dx2_left(h.w[m], dx)) * (1.0 + h.t[m]));
    } else {
      r.w_trace.push_back(std::abs(dx1_left(h.w[m], dx)));
      r.z_trace.push_back(std::abs(dx1_left(h.z[m], dx)));
      r.curvature.push_back(std::abs(dx3_left(h.w[m], dx)));
    }
  }
  return r;
}

TailCheck tail_vanishing_check(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 2) {
    throw ConfigError("tail_vanishing_check needs matching series of at least 2 samples");
  }
  const double tau0 = 1.0 + times.front();
  const double tau1 = 1.0 + times.back();
  if (tau1 < 10.0 * tau0) {
    throw ConfigError("tail_vanishing_check needs the series to span a decade in 1 + t");
  }
  double first_sum = 0.0, last_sum = 0.0;
  std::size_t first_n = 0, last_n = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double tau = 1.0 + times[i];
    if (tau <= 10.0 * tau0) {
      first_sum += values[i];
      ++first_n;
    }
    if (tau >= tau1 / 10.0) {
      last_sum += values[i];
      ++last_n;
    }
  }
  TailCheck c;
  c.first_decade_mean = first_sum / static_cast<double>(first_n);
  c.last_decade_mean = last_sum / static_cast<double>(last_n);
  c.final_value = values.back();
  c.max_value = *std::max_element(values.begin(), values.end());
  c.vanishing = c.last_decade_mean <= 0.1 * c.first_decade_mean &&
                c.final_value <= 0.05 * c.max_value;
  return c;
}

double heat_oracle(double a, double amp, double sigma, double x, double t) {
  const double s2 = sigma * sigma + 2.0 * a * t;
  return amp * sigma / std::sqrt(s2) * std::exp(-x * x / (2.0 * s2));
}

}  // namespace diffwave
