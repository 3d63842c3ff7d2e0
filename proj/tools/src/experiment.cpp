#include "experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "diffwave/energy.hpp"
#include "diffwave/error.hpp"
#include "diffwave/profile_io.hpp"

namespace diffwave::cli {

namespace {

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Key {
  std::string name;
  Setter set;
  Getter get;
};

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("config key '" + key + "': expected an unsigned integer, got '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& v, const std::string& key) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  }
  return out;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(item, key));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_double(v[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

template <class Proj>
Key number(std::string name, Proj proj) {
  return {name,
          [proj, name](ExperimentConfig& c, const std::string& v) { proj(c) = parse_double(v, name); },
          [proj](const ExperimentConfig& c) {
            return format_double(proj(c));
          }};
}

template <class Proj>
Key text(std::string name, Proj proj) {
  return {name, [proj](ExperimentConfig& c, const std::string& v) { proj(c) = v; },
          [proj](const ExperimentConfig& c) { return proj(c); }};
}

template <class Proj>
Key flag(std::string name, Proj proj) {
  return {name,
          [proj, name](ExperimentConfig& c, const std::string& v) { proj(c) = parse_bool(v, name); },
          [proj](const ExperimentConfig& c) {
            return std::string(proj(c) ? "true" : "false");
          }};
}

void shape_keys(std::vector<Key>& keys, const std::string& prefix, ShapeSpec ExperimentConfig::*s) {
  keys.push_back(text(prefix + ".shape", [s](auto& c) -> auto& { return (c.*s).type; }));
  keys.push_back(number(prefix + ".amp", [s](auto& c) -> auto& { return (c.*s).amp; }));
  keys.push_back(number(prefix + ".center", [s](auto& c) -> auto& { return (c.*s).center; }));
  keys.push_back(number(prefix + ".sigma", [s](auto& c) -> auto& { return (c.*s).sigma; }));
  keys.push_back(number(prefix + ".half_width",
                        [s](auto& c) -> auto& { return (c.*s).half_width; }));
  keys.push_back(number(prefix + ".sharpness",
                        [s](auto& c) -> auto& { return (c.*s).sharpness; }));
  keys.push_back(number(prefix + ".cutoff", [s](auto& c) -> auto& { return (c.*s).cutoff; }));
  keys.push_back(number(prefix + ".window", [s](auto& c) -> auto& { return (c.*s).window; }));
}

const std::vector<Key>& key_table() {
  static const std::vector<Key> table = [] {
    using C = ExperimentConfig;
    std::vector<Key> k;
    k.push_back(number("a", [](auto& c) -> auto& { return c.params.a; }));
    k.push_back(number("b", [](auto& c) -> auto& { return c.params.b; }));
    k.push_back(number("lambda", [](auto& c) -> auto& { return c.params.lambda; }));
    k.push_back(number("mu", [](auto& c) -> auto& { return c.params.mu; }));
    k.push_back(number("kappa", [](auto& c) -> auto& { return c.params.kappa; }));
    k.push_back(number("u_minus", [](auto& c) -> auto& { return c.params.u_minus; }));
    k.push_back(number("u_plus", [](auto& c) -> auto& { return c.params.u_plus; }));
    k.push_back(text("kind", [](auto& c) -> auto& { return c.kind; }));
    k.push_back(number("beta", [](auto& c) -> auto& { return c.beta; }));
    k.push_back({"width", [](C& c, const std::string& v) { c.width = parse_double(v, "width"); },
                 [](const C& c) { return format_double(c.resolved_width()); }});
    k.push_back(number("dx", [](auto& c) -> auto& { return c.dx; }));
    k.push_back(number("dt", [](auto& c) -> auto& { return c.dt; }));
    k.push_back(number("t_final", [](auto& c) -> auto& { return c.t_final; }));
    k.push_back(number("output_every", [](auto& c) -> auto& { return c.output_every; }));
    shape_keys(k, "w0", &C::w0);
    shape_keys(k, "z0", &C::z0);
    k.push_back({"seed", [](C& c, const std::string& v) { c.seed = parse_u64(v, "seed"); },
                 [](const C& c) { return std::to_string(c.seed); }});
    k.push_back(flag("upwind", [](auto& c) -> auto& { return c.upwind; }));
    k.push_back(number("width_factor", [](auto& c) -> auto& { return c.width_factor; }));
    k.push_back(flag("enforce_width", [](auto& c) -> auto& { return c.enforce_width; }));
    k.push_back(number("blowup_threshold", [](auto& c) -> auto& { return c.blowup_threshold; }));
    k.push_back(text("profile_file", [](auto& c) -> auto& { return c.profile_file; }));
    k.push_back(text("profile_sha", [](auto& c) -> auto& { return c.profile_sha; }));
    k.push_back(number("profile_tol", [](auto& c) -> auto& { return c.profile_tol; }));
    k.push_back(number("alpha", [](auto& c) -> auto& { return c.alpha; }));
    k.push_back({"energy_k", [](C& c, const std::string& v) { c.energy_k = parse_double(v, "energy_k"); },
                 [](const C& c) { return format_double(c.resolved_energy_k()); }});
    k.push_back({"fit_t_min",
                 [](C& c, const std::string& v) { c.fit_t_min = parse_double(v, "fit_t_min"); },
                 [](const C& c) { return format_double(c.resolved_fit_t_min()); }});
    k.push_back({"fit_t_max",
                 [](C& c, const std::string& v) { c.fit_t_max = parse_double(v, "fit_t_max"); },
                 [](const C& c) { return format_double(c.resolved_fit_t_max()); }});
    k.push_back({"snapshot_stride",
                 [](C& c, const std::string& v) { c.snapshot_stride = parse_int(v, "snapshot_stride"); },
                 [](const C& c) { return std::to_string(c.snapshot_stride); }});
    k.push_back(text("report_format", [](auto& c) -> auto& { return c.report_format; }));
    k.push_back({"mms_spatial_dx",
                 [](C& c, const std::string& v) { c.mms_spatial_dx = parse_list(v, "mms_spatial_dx"); },
                 [](const C& c) { return join(c.mms_spatial_dx); }});
    k.push_back(number("mms_temporal_dx", [](auto& c) -> auto& { return c.mms_temporal_dx; }));
    k.push_back({"mms_temporal_dt",
                 [](C& c, const std::string& v) { c.mms_temporal_dt = parse_list(v, "mms_temporal_dt"); },
                 [](const C& c) { return join(c.mms_temporal_dt); }});
    k.push_back({"verify_trials",
                 [](C& c, const std::string& v) { c.verify_trials = parse_int(v, "verify_trials"); },
                 [](const C& c) { return std::to_string(c.verify_trials); }});
    k.push_back(text("sweep_key", [](auto& c) -> auto& { return c.sweep_key; }));
    k.push_back({"sweep_values", [](C& c, const std::string& v) { c.sweep_values = split_list(v); },
                 [](const C& c) { return join(c.sweep_values); }});
    return k;
  }();
  return table;
}

bool informational(const std::string& key) {
  return key.starts_with("scheme.") || key.starts_with("manifest.");
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void validate_shape(const ShapeSpec& s, const std::string& prefix) {
  static const std::set<std::string> types{"zero", "gaussian", "step", "noise"};
  require(types.count(s.type) == 1,
          prefix + ".shape must be one of zero, gaussian, step, noise (got '" + s.type + "')");
  require(std::isfinite(s.amp) && std::isfinite(s.center), prefix + ".amp and .center must be finite");
  if (s.type == "gaussian") require(s.sigma > 0.0, prefix + ".sigma must be positive");
  if (s.type == "step") {
    require(s.half_width > 0.0, prefix + ".half_width must be positive");
    require(s.sharpness > 0.0, prefix + ".sharpness must be positive");
  }
  if (s.type == "noise") {
    require(s.cutoff > 0.0, prefix + ".cutoff must be positive");
    require(s.window > 0.0, prefix + ".window must be positive");
  }
}

void validate(const ExperimentConfig& c) {
  c.params.validate();
  require(c.kind == "cauchy" || c.kind == "dirichlet" || c.kind == "neumann",
          "kind must be one of cauchy, dirichlet, neumann (got '" + c.kind + "')");
  if (c.kind == "dirichlet") {
    const double lo = std::min(c.params.u_minus, c.params.u_plus);
    const double hi = std::max(c.params.u_minus, c.params.u_plus);
    require(c.beta >= lo && c.beta <= hi, "beta must lie between u_minus and u_plus");
  }
  require(c.width >= 0.0, "width must be non-negative (0 selects the automatic width)");
  require(c.dx > 0.0, "dx must be positive");
  require(c.dt > 0.0, "dt must be positive");
  require(c.t_final >= 0.0, "t_final must be non-negative");
  require(c.output_every > 0.0, "output_every must be positive");
  validate_shape(c.w0, "w0");
  validate_shape(c.z0, "z0");
  require(c.width_factor > 0.0, "width_factor must be positive");
  require(c.blowup_threshold > 0.0, "blowup_threshold must be positive");
  require(c.profile_tol > 0.0 && c.profile_tol <= 1e-3, "profile_tol must lie in (0, 1e-3]");
  require(c.alpha > 0.0, "alpha must be positive");
  require(c.energy_k >= 0.0, "energy_k must be non-negative (0 selects 2 mu^2 / lambda + 1)");
  require(is_positive_definite(c.params.lambda, c.params.mu, c.resolved_energy_k()),
          "energy_k must satisfy lambda * energy_k > mu^2");
  require(c.resolved_fit_t_min() < c.resolved_fit_t_max() || c.t_final == 0.0,
          "fit_t_min must be below fit_t_max");
  require(c.snapshot_stride >= 0, "snapshot_stride must be non-negative (0 writes none)");
  require(c.report_format == "json" || c.report_format == "text",
          "report_format must be json or text");
  for (double v : c.mms_spatial_dx) require(v > 0.0, "mms_spatial_dx entries must be positive");
  for (double v : c.mms_temporal_dt) require(v > 0.0, "mms_temporal_dt entries must be positive");
  require(c.mms_temporal_dx > 0.0, "mms_temporal_dx must be positive");
  require(c.verify_trials >= 1, "verify_trials must be at least 1");
}

}  // namespace

double ExperimentConfig::resolved_width() const {
  if (width > 0.0) return width;
  const InitialData init = build_initial(*this);
  const double support =
      std::max(shape_support_radius(init.w0), shape_support_radius(init.z0));
  return std::ceil(width_factor * std::sqrt(1.0 + t_final) + support + 2.0);
}

double ExperimentConfig::resolved_energy_k() const {
  return energy_k > 0.0 ? energy_k : default_energy_weight(params);
}

double ExperimentConfig::resolved_fit_t_min() const {
  return fit_t_min >= 0.0 ? fit_t_min : t_final / 10.0;
}

double ExperimentConfig::resolved_fit_t_max() const {
  return fit_t_max >= 0.0 ? fit_t_max : t_final;
}

ExperimentConfig parse_experiment(const KeyValues& kv) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  for (const auto& [key, value] : kv) {
    if (informational(key)) continue;
    if (!seen.insert(key).second) throw ConfigError("config key '" + key + "' is set twice");
    const auto& table = key_table();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const Key& k) { return k.name == key; });
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->set(cfg, value);
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw ConfigError("config file '" + path.string() + "' does not exist");
  }
  return parse_experiment(load_key_values(path));
}

void set_key(KeyValues& kv, const std::string& key, const std::string& value) {
  for (auto& [k, v] : kv) {
    if (k == key) {
      v = value;
      return;
    }
  }
  kv.emplace_back(key, value);
}

KeyValues describe(const ExperimentConfig& cfg) {
  KeyValues out;
  for (const Key& k : key_table()) out.emplace_back(k.name, k.get(cfg));
  return out;
}

Shape build_shape(const ShapeSpec& s, std::uint64_t seed) {
  if (s.type == "gaussian") return GaussianBump{s.amp, s.center, s.sigma};
  if (s.type == "step") return SmoothedStep{s.amp, s.center, s.half_width, s.sharpness};
  if (s.type == "noise") return FilteredNoise(seed, s.cutoff, s.amp, s.center, s.window);
  return ZeroShape{};
}

InitialData build_initial(const ExperimentConfig& cfg) {
  InitialData init;
  init.z0 = build_shape(cfg.z0, cfg.seed);
  init.w0 = build_shape(cfg.w0, cfg.seed + 1);
  return init;
}

MmsLadder build_ladder(const ExperimentConfig& cfg) {
  MmsLadder l;
  for (double dx : cfg.mms_spatial_dx) l.spatial.emplace_back(dx, 0.25 * dx * dx);
  for (double dt : cfg.mms_temporal_dt) l.temporal.emplace_back(cfg.mms_temporal_dx, dt);
  return l;
}

WeightKernel build_kernel(const ExperimentConfig& cfg) {
  return {cfg.alpha, cfg.kind == "cauchy" ? ProfileDomain::kFullLine : ProfileDomain::kHalfLine};
}

DiffusionWave solve_wave(const ExperimentConfig& cfg) {
  if (cfg.kind == "dirichlet") {
    return DiffusionWave(solve_profile_halfline(cfg.params, cfg.beta, cfg.profile_tol), cfg.params);
  }
  return DiffusionWave(solve_profile_cauchy(cfg.params, cfg.profile_tol), cfg.params);
}

DiffusionWave obtain_wave(const ExperimentConfig& cfg) {
  if (cfg.profile_file.empty()) return solve_wave(cfg);
  const std::filesystem::path path(cfg.profile_file);
  if (!std::filesystem::exists(path)) {
    throw ConfigError("profile file '" + cfg.profile_file + "' does not exist");
  }
  if (!cfg.profile_sha.empty()) {
    const std::string sha = git_blob_hash_file(path);
    if (sha != cfg.profile_sha) {
      throw ConfigError("profile file '" + cfg.profile_file + "' hashes to " + sha +
                        ", expected profile_sha = " + cfg.profile_sha);
    }
  }
  return load_profile(path);
}

RunConfig build_run_config(const ExperimentConfig& cfg, const std::optional<DiffusionWave>& wave) {
  RunConfig rc;
  rc.params = cfg.params;
  const double width = cfg.resolved_width();
  if (cfg.kind == "neumann") {
    rc.kind = NeumannKind{width};
  } else {
    if (!wave) throw ConfigError("kind '" + cfg.kind + "' needs a diffusion-wave profile");
    if (cfg.kind == "cauchy") {
      rc.kind = CauchyKind{*wave, width};
    } else {
      rc.kind = DirichletKind{cfg.beta, *wave, width};
    }
  }
  rc.grid = grid_for(rc.kind, cfg.dx);
  rc.dt = cfg.dt;
  rc.t_final = cfg.t_final;
  const auto count = static_cast<long long>(std::floor(cfg.t_final / cfg.output_every + 1e-9));
  for (long long i = 0; i <= count; ++i) rc.output_times.push_back(i * cfg.output_every);
  if (rc.output_times.back() < cfg.t_final) rc.output_times.push_back(cfg.t_final);
  rc.initial = build_initial(cfg);
  rc.scheme.upwind = cfg.upwind;
  rc.scheme.width_factor = cfg.width_factor;
  rc.scheme.enforce_width = cfg.enforce_width;
  rc.scheme.blowup_threshold = cfg.blowup_threshold;
  return rc;
}

}  // namespace diffwave::cli
