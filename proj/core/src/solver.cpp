#include "diffwave/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"

namespace diffwave {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool same_value(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

void require_matching_params(const DiffusionWave& wave, const ModelParams& p) {
  const ModelParams& q = wave.params();
  const bool ok = same_value(p.a, q.a) && same_value(p.b, q.b) && same_value(p.lambda, q.lambda) &&
                  same_value(p.mu, q.mu) && same_value(p.kappa, q.kappa) &&
                  same_value(p.u_minus, wave.profile().u_minus) &&
                  same_value(p.u_plus, wave.profile().u_plus);
  if (!ok) throw ConfigError("the reference wave was built for different parameters");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

const char* kind_name(const ProblemKind& kind) noexcept {
  return std::visit(Overloaded{
                        [](const CauchyKind&) { return "cauchy"; },
                        [](const DirichletKind&) { return "dirichlet"; },
                        [](const NeumannKind&) { return "neumann"; },
                    },
                    kind);
}

bool is_half_line(const ProblemKind& kind) noexcept {
  return !std::holds_alternative<CauchyKind>(kind);
}

const DiffusionWave* reference_wave(const ProblemKind& kind) noexcept {
  if (const auto* c = std::get_if<CauchyKind>(&kind)) return &c->wave;
  if (const auto* d = std::get_if<DirichletKind>(&kind)) return &d->wave;
  return nullptr;
}

Grid grid_for(const ProblemKind& kind, double max_dx) {
  return std::visit(Overloaded{
                        [&](const CauchyKind& c) {
                          return build_grid_with_spacing(-c.half_width, 2.0 * c.half_width,
                                                         max_dx);
                        },
                        [&](const DirichletKind& d) {
                          return build_grid_with_spacing(0.0, d.width, max_dx);
                        },
                        [&](const NeumannKind& n) {
                          return build_grid_with_spacing(0.0, n.width, max_dx);
                        },
                    },
                    kind);
}

double max_stable_dt(const RunConfig& config, const State& initial) {
  const Grid& g = config.grid;
  double slope = 0.0;
  for (std::size_t i = 0; i + 1 < g.n; ++i) {
    slope = std::max(slope, std::abs(initial.rho[i + 1] - initial.rho[i]) / g.dx);
  }
  const double drift = std::max(1.0, config.params.kappa * slope);
  return std::min(g.dx, 0.5 * g.dx / drift);
}

void validate_config(const RunConfig& config) {
  config.params.validate();
  const Grid& g = config.grid;
  if (g.n < 3 || !(g.dx > 0.0)) throw ConfigError("grid needs at least 3 nodes and dx > 0");
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw ConfigError("dt must be positive");
  if (!(config.t_final >= 0.0) || !std::isfinite(config.t_final)) {
    throw ConfigError("t_final must be non-negative");
  }
  for (double t : config.output_times) {
    if (!(t >= 0.0 && t <= config.t_final * (1.0 + 1e-12))) {
      throw ConfigError("output time " + fmt(t) + " lies outside [0, t_final]");
    }
  }

  const double tol = 1e-9 * std::max(1.0, g.length());
  std::visit(Overloaded{
                 [&](const CauchyKind& c) {
                   require_matching_params(c.wave, config.params);
                   if (c.wave.profile().domain != ProfileDomain::kFullLine) {
                     throw ConfigError("cauchy problems need a full-line profile");
                   }
                   if (std::abs(g.x0 + c.half_width) > tol ||
                       std::abs(g.x_last() - c.half_width) > tol) {
                     throw ConfigError("grid does not span [-half_width, half_width]");
                   }
                   if (config.scheme.enforce_width && !config.forcing) {
                     const double support = std::max(shape_support_radius(config.initial.w0),
                                                      shape_support_radius(config.initial.z0));
                     const double need =
                         config.scheme.width_factor * std::sqrt(1.0 + config.t_final) + support;
                     if (c.half_width < need) {
                       throw ConfigError("half_width " + fmt(c.half_width) +
                                         " is below the required " + fmt(need));
                     }
                   }
                 },
                 [&](const DirichletKind& d) {
                   require_matching_params(d.wave, config.params);
                   const Profile& p = d.wave.profile();
                   if (p.domain != ProfileDomain::kHalfLine || !p.beta ||
                       !same_value(*p.beta, d.beta)) {
                     throw ConfigError("dirichlet problems need a half-line profile for beta");
                   }
                   if (std::abs(g.x0) > tol || std::abs(g.x_last() - d.width) > tol) {
                     throw ConfigError("grid does not span [0, width]");
                   }
                 },
                 [&](const NeumannKind& n) {
                   if (std::abs(g.x0) > tol || std::abs(g.x_last() - n.width) > tol) {
                     throw ConfigError("grid does not span [0, width]");
                   }
                 },
             },
             config.kind);

  if (config.dt > g.dx * (1.0 + 1e-12)) {
    throw ConfigError("dt " + fmt(config.dt) + " exceeds dx " + fmt(g.dx));
  }
  const double limit = max_stable_dt(config, init_state(config));
  if (config.dt > limit * (1.0 + 1e-12)) {
    throw ConfigError("dt " + fmt(config.dt) + " exceeds the chemotaxis limit " + fmt(limit));
  }
}

State init_state(const RunConfig& config) {
  const Grid& g = config.grid;
  State s;
  s.t = 0.0;
  if (config.forcing) {
    s.u = sample(g, [&](double x) { return config.forcing->exact_u(x, 0.0); });
    s.rho = sample(g, [&](double x) { return config.forcing->exact_rho(x, 0.0); });
    apply_boundary(s, config);
    return s;
  }

  const InitialData& init = config.initial;
  if (std::holds_alternative<DirichletKind>(config.kind)) {
    const double w = std::abs(shape_value(init.w0, 0.0));
    const double z = std::abs(shape_value(init.z0, 0.0));
    if (w > 1e-12 || z > 1e-12) {
      throw ConfigError("dirichlet perturbations must vanish at x = 0 (|w0(0)| = " + fmt(w) +
                        ", |z0(0)| = " + fmt(z) + ")");
    }
  } else if (std::holds_alternative<NeumannKind>(config.kind)) {
    const double w = std::abs(shape_derivative(init.w0, 0.0));
    const double z = std::abs(shape_derivative(init.z0, 0.0));
    if (w > 1e-12 || z > 1e-12) {
      throw ConfigError("neumann perturbations must have zero slope at x = 0 (|w0'(0)| = " +
                        fmt(w) + ", |z0'(0)| = " + fmt(z) + ")");
    }
  }

  const ModelParams& p = config.params;
  if (const DiffusionWave* wave = reference_wave(config.kind)) {
    s.u = sample(g, [&](double x) { return wave->u(x, 0.0) + shape_value(init.z0, x); });
    s.rho = sample(g, [&](double x) { return wave->rho(x, 0.0) + shape_value(init.w0, x); });
  } else {
    s.u = sample(g, [&](double x) { return p.u_plus + shape_value(init.z0, x); });
    s.rho = sample(g, [&](double x) { return p.rho_plus() + shape_value(init.w0, x); });
  }
  apply_boundary(s, config);
  return s;
}

void apply_boundary(State& state, const RunConfig& config) {
  const std::size_t n = config.grid.n;
  require_aligned(state.u, config.grid);
  require_aligned(state.rho, config.grid);
  const ModelParams& p = config.params;
  const double t = state.t;
  const auto& f = config.forcing;

  const double xr = config.grid.x_last();
  state.u[n - 1] = f ? f->exact_u(xr, t) : p.u_plus;
  state.rho[n - 1] = f ? f->exact_rho(xr, t) : p.rho_plus();

  const double xl = config.grid.x0;
  std::visit(Overloaded{
                 [&](const CauchyKind&) {
                   state.u[0] = f ? f->exact_u(xl, t) : p.u_minus;
                   state.rho[0] = f ? f->exact_rho(xl, t) : p.rho_minus();
                 },
                 [&](const DirichletKind& d) {
                   state.u[0] = f ? f->exact_u(xl, t) : d.beta;
                   state.rho[0] = f ? f->exact_rho(xl, t) : p.darcy(d.beta);
                 },
                 [&](const NeumannKind&) {
                   state.u[0] = (4.0 * state.u[1] - state.u[2]) / 3.0;
                   state.rho[0] = (4.0 * state.rho[1] - state.rho[2]) / 3.0;
                 },
             },
             config.kind);
}

Stepper::Stepper(const RunConfig& config) : config_(config) {
  const Grid& g = config_.grid;
  const std::size_t n = g.n;
  if (n < 3) throw ConfigError("grid needs at least 3 nodes");
  const ModelParams& p = config_.params;
  const double dt = config_.dt;
  r_u_ = p.a * dt / (g.dx * g.dx);
  r_rho_ = p.b * dt / (g.dx * g.dx);
  d_rho_ = 1.0 + 2.0 * r_rho_ + dt * p.lambda;
  const bool neumann = std::holds_alternative<NeumannKind>(config_.kind);

  auto build = [&](double r, double d) {
    std::vector<double> lower(n, -r), diag(n, d), upper(n, -r);
    if (neumann) {
      // u_0 = (4 u_1 - u_2) / 3 with u_2 eliminated through row 1.
      diag[0] = 2.0 * r;
      upper[0] = d - 4.0 * r;
    } else {
      diag[0] = 1.0;
      upper[0] = 0.0;
    }
    diag[n - 1] = 1.0;
    lower[n - 1] = 0.0;
    return TridiagonalFactorization(lower, diag, upper);
  };
  u_solver_ = build(r_u_, 1.0 + 2.0 * r_u_);
  rho_solver_ = build(r_rho_, d_rho_);
  flux_.assign(n - 1, 0.0);
  rhs_u_.assign(n, 0.0);
  rhs_rho_.assign(n, 0.0);
  nodes_ = g.nodes();
}

Stepper::EndValues Stepper::end_values(double t) const {
  State probe;
  probe.u.assign(config_.grid.n, 0.0);
  probe.rho.assign(config_.grid.n, 0.0);
  probe.t = t;
  apply_boundary(probe, config_);
  return {probe.u.front(), probe.rho.front(), probe.u.back(), probe.rho.back()};
}

void Stepper::advance(State& state) {
  const Grid& g = config_.grid;
  const std::size_t n = g.n;
  const ModelParams& p = config_.params;
  const double dt = config_.dt;
  const double inv_dx = 1.0 / g.dx;
  const double t_new = state.t + dt;
  const bool neumann = std::holds_alternative<NeumannKind>(config_.kind);
  const auto& f = config_.forcing;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double slope = (state.rho[i + 1] - state.rho[i]) * inv_dx;
    double carried;
    if (config_.scheme.upwind) {
      carried = slope > 0.0 ? state.u[i] : state.u[i + 1];
    } else {
      carried = 0.5 * (state.u[i] + state.u[i + 1]);
    }
    flux_[i] = p.kappa * carried * slope;
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    rhs_u_[i] = state.u[i] - dt * (flux_[i] - flux_[i - 1]) * inv_dx;
    if (f) rhs_u_[i] += dt * f->source_u(nodes_[i], t_new);
  }
  const EndValues ends = end_values(t_new);
  rhs_u_[0] = neumann ? rhs_u_[1] : ends.u_left;
  rhs_u_[n - 1] = ends.u_right;
  u_solver_.solve_in_place(rhs_u_);
  state.u.swap(rhs_u_);

  for (std::size_t i = 1; i + 1 < n; ++i) {
    rhs_rho_[i] = state.rho[i] + dt * p.mu * state.u[i];
    if (f) rhs_rho_[i] += dt * f->source_rho(nodes_[i], t_new);
  }
  rhs_rho_[0] = neumann ? rhs_rho_[1] : ends.rho_left;
  rhs_rho_[n - 1] = ends.rho_right;
  rho_solver_.solve_in_place(rhs_rho_);
  state.rho.swap(rhs_rho_);
  state.t = t_new;

  const double limit = config_.scheme.blowup_threshold;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = state.u[i];
    const double b = state.rho[i];
    if (!std::isfinite(a) || !std::isfinite(b) || std::abs(a) > limit || std::abs(b) > limit) {
      throw BlowupError(t_new, "solution left the finite range at x = " + fmt(nodes_[i]) +
                                   ", t = " + fmt(t_new));
    }
  }
}

State step(const State& state, const RunConfig& config) {
  Stepper stepper(config);
  State next = state;
  stepper.advance(next);
  return next;
}

namespace {

SnapshotStats stats_of(const State& s, const Grid& g, std::size_t step, double seconds) {
  SnapshotStats st;
  st.t = s.t;
  st.step = step;
  st.max_abs_u = max_abs(s.u);
  st.max_abs_rho = max_abs(s.rho);
  st.mass_u = trapezoid(s.u, g.dx);
  st.wall_seconds = seconds;
  return st;
}

}  // namespace

RunResult run(const RunConfig& config, RunResult* partial) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const auto total = static_cast<std::size_t>(std::llround(config.t_final / config.dt));
  std::vector<std::size_t> marks;
  if (config.output_times.empty()) {
    marks = {0, total};
  } else {
    for (double t : config.output_times) {
      marks.push_back(std::min(total, static_cast<std::size_t>(std::llround(t / config.dt))));
    }
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  RunResult result;
  result.grid = config.grid;
  result.dt = config.dt;
  State state = init_state(config);
  Stepper stepper(config);
  auto next = marks.begin();
  auto capture = [&](std::size_t n) {
    while (next != marks.end() && *next == n) {
      State snap = state;
      snap.t = static_cast<double>(n) * config.dt;
      result.stats.push_back(stats_of(snap, config.grid, n, elapsed()));
      result.snapshots.push_back(std::move(snap));
      ++next;
    }
  };

  capture(0);
  try {
    for (std::size_t n = 1; n <= total; ++n) {
      stepper.advance(state);
      state.t = static_cast<double>(n) * config.dt;
      result.steps = n;
      capture(n);
    }
  } catch (const BlowupError&) {
    if (partial) *partial = result;
    throw;
  }
  return result;
}

}  // namespace diffwave
