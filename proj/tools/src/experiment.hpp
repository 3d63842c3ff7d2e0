#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "diffwave/artifacts.hpp"
#include "diffwave/initial.hpp"
#include "diffwave/manufactured.hpp"
#include "diffwave/params.hpp"
#include "diffwave/solver.hpp"
#include "diffwave/weights.hpp"

namespace diffwave::cli {

// One initial perturbation as written in the config (prefix "w0." or "z0.").
struct ShapeSpec {
  std::string type = "zero";  // zero | gaussian | step | noise
  double amp = 0.0;
  double center = 0.0;
  double sigma = 1.0;
  double half_width = 1.0;
  double sharpness = 0.5;
  double cutoff = 2.0;
  double window = 2.0;
};

// Everything a command needs. Every field has a default, so an empty config
// file is a valid Cauchy demo run.
struct ExperimentConfig {
  ModelParams params = [] {
    ModelParams p;
    p.u_minus = -0.025;
    p.u_plus = 0.025;
    return p;
  }();
  std::string kind = "cauchy";  // cauchy | dirichlet | neumann
  double beta = 0.0;
  double width = 0.0;  // 0 selects width_factor sqrt(1 + T) + support + 2
  double dx = 0.1;
  double dt = 0.05;
  double t_final = 10.0;
  double output_every = 0.5;
  ShapeSpec w0;
  ShapeSpec z0 = [] {
    ShapeSpec s;
    s.type = "gaussian";
    s.amp = 0.01;
    return s;
  }();
  std::uint64_t seed = 20240601;

  bool upwind = false;
  double width_factor = 8.0;
  bool enforce_width = true;
  double blowup_threshold = 1e6;

  std::string profile_file;  // empty: solve the profile in-process
  std::string profile_sha;   // if set, the profile file must hash to it
  double profile_tol = 1e-8;

  double alpha = 0.125;
  double energy_k = 0.0;  // 0 selects 2 mu^2 / lambda + 1
  double fit_t_min = -1.0;  // negative selects t_final / 10
  double fit_t_max = -1.0;  // negative selects t_final
  int snapshot_stride = 1;
  std::string report_format = "json";  // json | text

  std::vector<double> mms_spatial_dx{0.1, 0.05, 0.025};
  double mms_temporal_dx = 0.005;
  std::vector<double> mms_temporal_dt{0.0025, 0.00125, 0.000625};
  int verify_trials = 1000;

  std::string sweep_key = "z0.amp";
  std::vector<std::string> sweep_values;

  double resolved_width() const;
  double resolved_energy_k() const;
  double resolved_fit_t_min() const;
  double resolved_fit_t_max() const;
};

/// Unknown keys, duplicates, malformed numbers and violated ranges all throw
/// ConfigError naming the key. Manifest-only keys (scheme.*, manifest.*) are
/// accepted and ignored so a manifest can be replayed as a config.
ExperimentConfig parse_experiment(const KeyValues& kv);
ExperimentConfig load_experiment(const std::filesystem::path& path);

/// Sets or replaces one key.
void set_key(KeyValues& kv, const std::string& key, const std::string& value);

/// Every field with its resolved value, in a stable order.
KeyValues describe(const ExperimentConfig& cfg);

Shape build_shape(const ShapeSpec& spec, std::uint64_t seed);
InitialData build_initial(const ExperimentConfig& cfg);
MmsLadder build_ladder(const ExperimentConfig& cfg);
WeightKernel build_kernel(const ExperimentConfig& cfg);

/// The profile used by wave-based kinds: read from profile_file when set,
/// solved otherwise.
DiffusionWave obtain_wave(const ExperimentConfig& cfg);
/// The profile of cmd_profile: half-line for dirichlet, full line otherwise.
DiffusionWave solve_wave(const ExperimentConfig& cfg);

/// Assembles the solver configuration. `wave` must be set for wave kinds.
RunConfig build_run_config(const ExperimentConfig& cfg, const std::optional<DiffusionWave>& wave);

}  // namespace diffwave::cli
