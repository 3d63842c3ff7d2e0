#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <optional>
#include <string>

#include "commands.hpp"
#include "diffwave/artifacts.hpp"
#include "diffwave/error.hpp"

using namespace diffwave;
using namespace diffwave::cli;

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("diffwave");
  logger->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("DIFFWAVE_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only accept it when asked for.
    if (level == spdlog::level::off && std::string(env) != "off") {
      spdlog::warn("DIFFWAVE_LOG='{}' is not a level name; using info", env);
    } else {
      spdlog::set_level(level);
    }
  }
}

struct Common {
  std::string config;
  std::string out = "diffwave_out";
  std::optional<std::uint64_t> seed;
};

KeyValues raw_config(const Common& c) {
  if (c.config.empty()) return {};
  if (!std::filesystem::exists(c.config)) {
    throw ConfigError("config file '" + c.config + "' does not exist");
  }
  return load_key_values(c.config);
}

ExperimentConfig experiment(const Common& c) {
  ExperimentConfig cfg = parse_experiment(raw_config(c));
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key = value config file (defaults fill missing keys)");
  sub->add_option("--out", c.out, "output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "override the config seed");
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"diffwave: diffusion waves of the 1D Keller-Segel system"};
  app.require_subcommand(1);

  Common profile_opts, simulate_opts, verify_opts, sweep_opts;
  int workers = 1;
  auto* profile = app.add_subcommand("profile", "solve the self-similar profile and report it");
  add_common(profile, profile_opts);
  auto* simulate = app.add_subcommand("simulate", "run the solver and write series and ledgers");
  add_common(simulate, simulate_opts);
  auto* verify = app.add_subcommand("verify", "run the bundled oracle checks");
  add_common(verify, verify_opts);
  auto* sweep = app.add_subcommand("sweep", "run simulate over sweep_values of sweep_key");
  add_common(sweep, sweep_opts);
  sweep->add_option("--workers", workers, "concurrent rows")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigFailure;
  }

  if (profile->parsed()) {
    return guarded([&] {
      cmd_profile(experiment(profile_opts), profile_opts.out);
      return int{kOk};
    });
  }
  if (simulate->parsed()) {
    return guarded([&] {
      cmd_simulate(experiment(simulate_opts), simulate_opts.out);
      return int{kOk};
    });
  }
  if (verify->parsed()) {
    return guarded([&] {
      return cmd_verify(experiment(verify_opts), verify_opts.out) ? int{kOk}
                                                                   : int{kVerificationFailure};
    });
  }
  return guarded([&] {
    cmd_sweep(raw_config(sweep_opts), sweep_opts.out, workers, sweep_opts.seed);
    return int{kOk};
  });
}
