#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "diffwave/grid.hpp"
#include "diffwave/initial.hpp"
#include "diffwave/params.hpp"
#include "diffwave/tridiag.hpp"
#include "diffwave/wave.hpp"

namespace diffwave {

/// Whole line truncated to [-half_width, half_width], ends clamped to (u_-+, rho_-+).
struct CauchyKind {
  DiffusionWave wave;
  double half_width = 0.0;
};

/// Half line [0, width] with u(0) = beta, rho(0) = mu beta / lambda.
struct DirichletKind {
  double beta = 0.0;
  DiffusionWave wave;
  double width = 0.0;
};

/// Half line [0, width] with u_x(0) = rho_x(0) = 0, near the constant state
/// (u_plus, mu u_plus / lambda).
struct NeumannKind {
  double width = 0.0;
};

using ProblemKind = std::variant<CauchyKind, DirichletKind, NeumannKind>;

const char* kind_name(const ProblemKind& kind) noexcept;
bool is_half_line(const ProblemKind& kind) noexcept;

/// Diffusion wave of a wave-based kind; nullptr for Neumann.
const DiffusionWave* reference_wave(const ProblemKind& kind) noexcept;

/// Grid over the kind's domain with spacing at most max_dx.
Grid grid_for(const ProblemKind& kind, double max_dx);

/// Extra source terms and exact boundary data, used to verify the scheme
/// against a manufactured solution. When present, initial data and the
/// clamped ends come from exact_u / exact_rho.
struct ManufacturedForcing {
  std::function<double(double x, double t)> source_u;
  std::function<double(double x, double t)> source_rho;
  std::function<double(double x, double t)> exact_u;
  std::function<double(double x, double t)> exact_rho;
};

struct SchemeOptions {
  bool upwind = false;                // first-order upwind chemotaxis flux
  double width_factor = 8.0;          // Cauchy half_width >= factor sqrt(1 + T) + support
  bool enforce_width = true;
  double blowup_threshold = 1e6;
};

struct RunConfig {
  ModelParams params;
  ProblemKind kind = NeumannKind{};
  Grid grid;
  double dt = 0.01;
  double t_final = 0.0;
  std::vector<double> output_times;  // empty means {0, t_final}
  InitialData initial;
  SchemeOptions scheme;
  std::optional<ManufacturedForcing> forcing;
};

/// Largest dt allowed by the explicit chemotaxis flux for this initial state:
/// min(dx, 0.5 dx / max(1, kappa max|rho_x|)).
double max_stable_dt(const RunConfig& config, const State& initial);

/// Throws ConfigError describing the first violated constraint.
void validate_config(const RunConfig& config);

/// u0 = u_bar(., 0) + z0, rho0 = rho_bar(., 0) + w0 for wave kinds;
/// u0 = u_plus + z0, rho0 = mu u_plus / lambda + w0 for Neumann. Throws
/// ConfigError when the perturbation violates the boundary compatibility
/// condition by more than 1e-12.
State init_state(const RunConfig& config);

/// Imposes the kind's boundary closure on a state at time state.t: clamped
/// ends, or u_0 = (4 u_1 - u_2) / 3 (zero one-sided derivative) on the Neumann
/// side.
void apply_boundary(State& state, const RunConfig& config);

/// IMEX stepper holding the factored implicit diffusion operators.
class Stepper {
 public:
  explicit Stepper(const RunConfig& config);

  /// One step: explicit conservative chemotaxis flux, backward Euler for
  /// a u_xx, then backward Euler for b rho_xx - lambda rho with the new u as
  /// source. Throws BlowupError on non-finite or oversized values.
  void advance(State& state);

 private:
  struct EndValues {
    double u_left, rho_left, u_right, rho_right;
  };
  EndValues end_values(double t) const;

  RunConfig config_;
  double r_u_ = 0.0;
  double r_rho_ = 0.0;
  double d_rho_ = 0.0;
  TridiagonalFactorization u_solver_;
  TridiagonalFactorization rho_solver_;
  std::vector<double> flux_;
  std::vector<double> rhs_u_;
  std::vector<double> rhs_rho_;
  std::vector<double> nodes_;
};

/// Single step from `state`; builds a fresh Stepper.
State step(const State& state, const RunConfig& config);

struct SnapshotStats {
  double t = 0.0;
  std::size_t step = 0;
  double max_abs_u = 0.0;
  double max_abs_rho = 0.0;
  double mass_u = 0.0;         // trapezoidal int u dx
  double wall_seconds = 0.0;   // since the start of the run
};

struct RunResult {
  Grid grid;
  double dt = 0.0;
  std::vector<State> snapshots;
  std::vector<SnapshotStats> stats;
  std::size_t steps = 0;
};

/// Validates, initializes and steps to t_final, capturing the states at the
/// step nearest each output time (recorded at that step's exact time).
/// Blow-up propagates as BlowupError; `partial`, when given, receives the
/// snapshots captured before the failure.
RunResult run(const RunConfig& config, RunResult* partial = nullptr);

}  // namespace diffwave
