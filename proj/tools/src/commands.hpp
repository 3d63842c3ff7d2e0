#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "experiment.hpp"

namespace diffwave::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigFailure = 2,
  kShootingFailure = 3,
  kBlowupFailure = 4,
  kVerificationFailure = 5,
};

/// What cmd_simulate produced, for the sweep table.
struct SimulateSummary {
  std::size_t steps = 0;
  double t_reached = 0.0;
  double n_max = 0.0;
  std::optional<double> exp_w, exp_z, exp_wx, exp_zx;
  std::string manifest_sha;
};

void cmd_profile(const ExperimentConfig& cfg, const std::filesystem::path& out);
SimulateSummary cmd_simulate(const ExperimentConfig& cfg, const std::filesystem::path& out);
/// Returns false when any check failed; the report is written either way.
bool cmd_verify(const ExperimentConfig& cfg, const std::filesystem::path& out);
/// `base` is the raw config text so each row can override one key before
/// validation. Returns the number of failed rows.
int cmd_sweep(const KeyValues& base, const std::filesystem::path& out, int workers,
              std::optional<std::uint64_t> seed);

/// Runs `body`, mapping library exceptions to exit codes and logging them.
int guarded(const std::function<int()>& body);
int exit_code_for(const std::exception& e);

}  // namespace diffwave::cli
