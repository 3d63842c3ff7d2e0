#include "commands.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>
#include <thread>

#include "diffwave/energy.hpp"
#include "diffwave/error.hpp"
#include "diffwave/perturbation.hpp"
#include "diffwave/profile_io.hpp"
#include "diffwave/verify.hpp"
#include "diffwave/weights.hpp"

#ifndef DIFFWAVE_VERSION
#define DIFFWAVE_VERSION "unknown"
#endif

namespace diffwave::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Non-finite numbers have no JSON form; they become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string write_manifest(const fs::path& out, const ExperimentConfig& cfg,
                           const std::string& command, const std::string& profile_sha) {
  KeyValues kv = describe(cfg);
  set_key(kv, "profile_sha", profile_sha);
  kv.emplace_back("manifest.command", command);
  kv.emplace_back("manifest.version", DIFFWAVE_VERSION);
  kv.emplace_back("scheme.time_stepping", "imex: explicit chemotaxis, backward euler diffusion");
  kv.emplace_back("scheme.chemotaxis_flux", cfg.upwind ? "half-node upwind" : "half-node central");
  kv.emplace_back("scheme.rho_source", "mu u at the new time level");
  kv.emplace_back("scheme.neumann_closure", "u0 = (4 u1 - u2) / 3");
  kv.emplace_back("scheme.snapshot_times", "nearest step, recorded as n dt");
  std::ostringstream os;
  os << "# diffwave manifest\n";
  write_key_values(os, kv);
  const std::string text = os.str();
  write_file(out / "manifest.txt", text);
  return git_blob_hash(text);
}

void flatten(const json& j, const std::string& prefix, KeyValues& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_double(j.get<double>()));
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

void write_report(const fs::path& out, const ExperimentConfig& cfg, const json& report) {
  if (cfg.report_format == "text") {
    KeyValues kv;
    flatten(report, "", kv);
    std::ostringstream os;
    write_key_values(os, kv);
    write_file(out / "report.txt", os.str());
  } else {
    write_file(out / "report.json", report.dump(2) + "\n");
  }
}

void write_table(const fs::path& path, std::string_view title, const std::vector<Column>& cols,
                 const std::vector<std::vector<double>>& columns) {
  std::vector<std::vector<double>> rows;
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row;
    row.reserve(columns.size());
    for (const auto& c : columns) row.push_back(c[i]);
    rows.push_back(std::move(row));
  }
  std::ostringstream os;
  write_columns(os, title, cols, rows);
  write_file(path, os.str());
}

std::vector<Column> dimensionless(std::initializer_list<const char*> names) {
  std::vector<Column> cols;
  for (const char* n : names) cols.push_back({n, "1"});
  return cols;
}

void write_snapshots(const fs::path& out, const ExperimentConfig& cfg, const RunResult& r,
                     const RunConfig& rc) {
  if (cfg.snapshot_stride == 0 || r.snapshots.empty()) return;
  const fs::path dir = out / "snapshots";
  fs::create_directories(dir);
  const auto stride = static_cast<std::size_t>(cfg.snapshot_stride);
  for (std::size_t m = 0; m < r.snapshots.size(); ++m) {
    if (m % stride != 0 && m + 1 != r.snapshots.size()) continue;
    const State& s = r.snapshots[m];
    const auto [w, z] = perturbation(s, r.grid, rc.kind, rc.params);
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%05zu.dat", m);
    write_table(dir / name, "snapshot t = " + format_double(s.t),
                dimensionless({"x", "u", "rho", "w", "z"}),
                {r.grid.nodes(), s.u, s.rho, w, z});
  }
}

struct Fit {
  json report;
  std::optional<double> exponent;
};

Fit try_fit(const std::vector<double>& t, const std::vector<double>& v, double t0, double t1) {
  Fit f;
  try {
    const RateFit r = fit_decay_rate(t, v, t0, t1);
    f.exponent = r.exponent;
    f.report = {{"exponent", num(r.exponent)}, {"intercept", num(r.intercept)},
                {"r2", num(r.r2)},             {"samples", r.samples},
                {"t_min", num(r.t_min)},       {"t_max", num(r.t_max)}};
  } catch (const Error& e) {
    f.report = {{"error", e.what()}};
  }
  return f;
}

json tail_json(const std::vector<double>& t, const std::vector<double>& v) {
  try {
    const TailCheck c = tail_vanishing_check(t, v);
    return {{"vanishing", c.vanishing},
            {"first_decade_mean", num(c.first_decade_mean)},
            {"last_decade_mean", num(c.last_decade_mean)},
            {"final", num(c.final_value)},
            {"max", num(c.max_value)}};
  } catch (const Error& e) {
    return {{"error", e.what()}};
  }
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::kConfig:
        return kConfigFailure;
      case ErrorKind::kShooting:
        return kShootingFailure;
      case ErrorKind::kBlowup:
        return kBlowupFailure;
      default:
        return kFailure;
    }
  }
  return kFailure;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    spdlog::error("{} (exit code {})", e.what(), code);
    return code;
  }
}

void cmd_profile(const ExperimentConfig& cfg, const fs::path& out) {
  fs::create_directories(out);
  spdlog::info("solving {} profile for u- = {}, u+ = {}", cfg.kind == "dirichlet" ? "half-line" : "full-line",
               cfg.params.u_minus, cfg.params.u_plus);
  const DiffusionWave wave = solve_wave(cfg);
  const Profile& p = wave.profile();
  save_profile(out / "profile.txt", wave);
  const std::string profile_sha = git_blob_hash_file(out / "profile.txt");
  const std::string manifest_sha = write_manifest(out, cfg, "profile", profile_sha);

  json rep;
  rep["command"] = "profile";
  rep["manifest_sha"] = manifest_sha;
  rep["profile_sha"] = profile_sha;
  rep["domain"] = p.domain == ProfileDomain::kFullLine ? "full_line" : "half_line";
  rep["constant"] = p.is_constant();
  rep["anchor"] = {{"xi0", num(p.anchor.xi0)}, {"phi0", num(p.anchor.phi0)},
                   {"slope0", num(p.anchor.slope0)}};
  rep["residuals"] = {{"left", num(p.left_residual)},
                      {"right", num(p.right_residual)},
                      {"ode", num(profile_ode_residual(cfg.params, p))}};
  rep["shooting_rounds"] = p.shooting_rounds;
  rep["xi_range"] = {num(p.xi_min()), num(p.xi_max())};
  if (cfg.params.kappa == 0.0 && p.domain == ProfileDomain::kFullLine) {
    rep["erf_slope0"] = num((cfg.params.u_plus - cfg.params.u_minus) /
                            (2.0 * std::sqrt(std::numbers::pi * cfg.params.a)));
  }

  if (p.is_constant()) {
    rep["envelope"] = {{"skipped", "constant profile"}};
    rep["decay_table"] = {{"skipped", "constant profile"}};
  } else {
    try {
      const Envelope env = fit_envelope(p);
      rep["envelope"] = {{"c_amp", num(env.c_amp)}, {"c0", num(env.c0)}, {"r2", num(env.r2)}};
    } catch (const Error& e) {
      rep["envelope"] = {{"error", e.what()}};
    }
    std::vector<double> times;
    for (int i = 0; i <= 8; ++i) times.push_back(std::pow(10.0, 1.0 + 0.25 * i) - 1.0);
    json table = json::array();
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& [k, j, pnorm] :
         {std::tuple{1, 0, 2.0}, std::tuple{1, 0, inf}, std::tuple{2, 0, 2.0}, std::tuple{0, 1, inf}}) {
      const DecayCheck c = check_decay_table(wave, times, k, j, pnorm);
      table.push_back({{"k", k},
                       {"j", j},
                       {"p", std::isfinite(pnorm) ? json(pnorm) : json("inf")},
                       {"observed", num(c.observed_exponent)},
                       {"predicted", num(c.predicted_exponent)},
                       {"r2", num(c.r2)},
                       {"degenerate", c.degenerate}});
    }
    rep["decay_table"] = table;
  }
  write_report(out, cfg, rep);
  spdlog::info("profile written to {}", (out / "profile.txt").string());
}

SimulateSummary cmd_simulate(const ExperimentConfig& cfg, const fs::path& out) {
  std::optional<DiffusionWave> wave;
  if (cfg.kind != "neumann") wave = obtain_wave(cfg);
  fs::create_directories(out);
  std::string profile_sha;
  if (wave) {
    save_profile(out / "profile.txt", *wave);
    profile_sha = git_blob_hash_file(out / "profile.txt");
    if (!cfg.profile_sha.empty() && cfg.profile_sha != profile_sha) {
      throw ConfigError("profile hashes to " + profile_sha + ", expected profile_sha = " +
                        cfg.profile_sha);
    }
  }
  const RunConfig rc = build_run_config(cfg, wave);
  validate_config(rc);

  SimulateSummary summary;
  summary.manifest_sha = write_manifest(out, cfg, "simulate", profile_sha);
  json rep;
  rep["command"] = "simulate";
  rep["manifest_sha"] = summary.manifest_sha;
  rep["kind"] = cfg.kind;
  rep["grid"] = {{"x0", num(rc.grid.x0)}, {"dx", num(rc.grid.dx)}, {"n", rc.grid.n}};

  spdlog::info("simulating {} on {} nodes, dt = {}, t_final = {}", cfg.kind, rc.grid.n, rc.dt,
               rc.t_final);
  RunResult result;
  try {
    result = run(rc, &result);
  } catch (const BlowupError& e) {
    spdlog::error("blow-up at t = {}; keeping {} snapshot(s)", e.time(), result.snapshots.size());
    write_snapshots(out, cfg, result, rc);
    rep["status"] = "blowup";
    rep["blowup"] = {{"time", num(e.time())}, {"message", e.what()},
                     {"last_good_time",
                      result.snapshots.empty() ? json(nullptr) : num(result.snapshots.back().t)}};
    write_report(out, cfg, rep);
    throw;
  }
  summary.steps = result.steps;
  summary.t_reached = result.snapshots.back().t;
  rep["status"] = "ok";
  rep["steps"] = result.steps;
  rep["t_reached"] = num(summary.t_reached);
  const SnapshotStats& first = result.stats.front();
  const SnapshotStats& last = result.stats.back();
  rep["mass_u"] = {{"initial", num(first.mass_u)}, {"final", num(last.mass_u)}};
  rep["max_abs_u"] = num(last.max_abs_u);
  write_snapshots(out, cfg, result, rc);

  if (result.snapshots.size() < 2) {
    rep["analysis"] = {{"skipped", "fewer than two snapshots"}};
    write_report(out, cfg, rep);
    return summary;
  }

  const PerturbationHistory hist = perturbation_history(result, rc.kind, rc.params);
  const PerturbSeries s = norm_series(hist);
  const std::vector<double> diss = s.dissipation();
  write_table(out / "series.dat", "perturbation norms",
              dimensionless({"t", "w", "w_x", "w_xx", "z", "z_x", "z_xx", "w_t", "z_t", "w_xt",
                             "z_xt", "combo", "combo_x", "combo_t", "w_max", "z_max", "energy",
                             "N", "dissipation"}),
              {s.t, s.w[0], s.w[1], s.w[2], s.z[0], s.z[1], s.z[2], s.w_t, s.z_t, s.w_xt, s.z_xt,
               s.combo, s.combo_x, s.combo_t, s.w_max, s.z_max, s.energy, s.n_functional, diss});
  write_table(out / "integrals.dat", "cumulative weighted integrals",
              dimensionless({"t", "int_w_x2", "int_tau_w_xx2", "int_tau2_w_xxx2", "int_z_x2",
                             "int_tau_z_xx2", "int_tau2_z_xxx2", "int_combo2", "int_tau_combo_x2",
                             "int_tau2_combo_xx2", "int_tau2_combo_t2"}),
              {s.t, s.cum_w[0], s.cum_w[1], s.cum_w[2], s.cum_z[0], s.cum_z[1], s.cum_z[2],
               s.cum_combo[0], s.cum_combo[1], s.cum_combo[2], s.cum_combo_t});

  const double K = cfg.resolved_energy_k();
  const EnergyLedger led = energy_ledger(hist, K);
  write_table(out / "ledger.dat", "energy ledger K = " + format_double(K),
              dimensionless({"t", "quadratic", "quadratic_x", "w_x2", "z_x2", "combo2", "w_xx2",
                             "z_xx2", "combo_x2", "boundary_w", "boundary_z"}),
              {led.t, led.quadratic, led.quadratic_x, led.w_x2, led.z_x2, led.combo2, led.w_xx2,
               led.z_xx2, led.combo_x2, led.boundary_w, led.boundary_z});

  const double t0 = cfg.resolved_fit_t_min(), t1 = cfg.resolved_fit_t_max();
  json fits;
  auto fit = [&](const char* name, const std::vector<double>& v, std::optional<double>* slot) {
    Fit f = try_fit(s.t, v, t0, t1);
    if (slot) *slot = f.exponent;
    fits[name] = f.report;
  };
  fit("w_l2", s.w[0], &summary.exp_w);
  fit("z_l2", s.z[0], &summary.exp_z);
  fit("w_x_l2", s.w[1], &summary.exp_wx);
  fit("z_x_l2", s.z[1], &summary.exp_zx);
  fit("w_xx_l2", s.w[2], nullptr);
  fit("z_xx_l2", s.z[2], nullptr);
  fit("w_max", s.w_max, nullptr);
  fit("z_max", s.z_max, nullptr);
  fit("combo_l2", s.combo, nullptr);
  rep["fits"] = fits;
  summary.n_max = s.n_functional.back();
  rep["n_functional_max"] = num(summary.n_max);
  rep["dissipation_final"] = num(diss.back());
  rep["energy_k"] = num(K);

  const WeightedEstimate we = check_weighted_estimate(hist, build_kernel(cfg));
  rep["weighted_estimate"] = {{"alpha", num(cfg.alpha)},      {"lhs", num(we.lhs)},
                              {"rhs", num(we.rhs)},           {"ratio", num(we.ratio)},
                              {"inconsistent", we.inconsistent}};

  if (hist.half_line) {
    const BoundaryReport b = boundary_report(hist, rc.kind);
    write_table(out / "boundary.dat",
                b.dirichlet ? "boundary traces |w(0)| |z(0)| |w_xx(0)|(1+t)"
                            : "boundary traces |w_x(0)| |z_x(0)| |w_xxx(0)|",
                dimensionless({"t", "w_trace", "z_trace", "curvature"}),
                {b.t, b.w_trace, b.z_trace, b.curvature});
    rep["boundary"] = {{"w_trace_max", num(*std::max_element(b.w_trace.begin(), b.w_trace.end()))},
                       {"z_trace_max", num(*std::max_element(b.z_trace.begin(), b.z_trace.end()))},
                       {"curvature_final", num(b.curvature.back())}};
    rep["tails"] = {{"w_x2", tail_json(led.t, led.w_x2)}, {"z_x2", tail_json(led.t, led.z_x2)}};
  }
  write_report(out, cfg, rep);
  spdlog::info("run finished: {} steps, N(T) = {}", result.steps, summary.n_max);
  return summary;
}

bool cmd_verify(const ExperimentConfig& cfg, const fs::path& out) {
  fs::create_directories(out);
  const std::string manifest_sha = write_manifest(out, cfg, "verify", "");
  VerifyOptions opt;
  opt.ladder = build_ladder(cfg);
  opt.seed = cfg.seed;
  opt.definiteness_trials = cfg.verify_trials;
  spdlog::info("running oracle checks");
  const VerifyReport r = run_verification(opt);
  json checks = json::array();
  for (const VerifyCheck& c : r.checks) {
    spdlog::log(c.passed ? spdlog::level::info : spdlog::level::err, "{} {}: {} (threshold {}) {}",
                c.passed ? "PASS" : "FAIL", c.name, c.value, c.threshold, c.detail);
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"value", num(c.value)},
                      {"threshold", num(c.threshold)},
                      {"detail", c.detail}});
  }
  json rep{{"command", "verify"},
           {"manifest_sha", manifest_sha},
           {"passed", r.passed()},
           {"checks", checks}};
  write_report(out, cfg, rep);
  return r.passed();
}

int cmd_sweep(const KeyValues& base, const fs::path& out, int workers,
              std::optional<std::uint64_t> seed) {
  const ExperimentConfig templ = parse_experiment(base);
  if (templ.sweep_values.empty()) throw ConfigError("sweep_values is empty");
  if (templ.sweep_key.starts_with("sweep_")) {
    throw ConfigError("sweep_key cannot name a sweep setting");
  }
  if (workers < 1) throw ConfigError("--workers must be at least 1");
  fs::create_directories(out);

  struct Row {
    std::string value;
    std::string status = "pending";
    int code = kOk;
    SimulateSummary summary;
    std::string message;
  };
  std::vector<Row> rows;
  for (const auto& v : templ.sweep_values) {
    Row row;
    row.value = v;
    rows.push_back(std::move(row));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      Row& row = rows[i];
      char name[32];
      std::snprintf(name, sizeof name, "row_%03zu", i);
      try {
        KeyValues kv = base;
        set_key(kv, templ.sweep_key, row.value);
        ExperimentConfig cfg = parse_experiment(kv);
        if (seed) cfg.seed = *seed;
        row.summary = cmd_simulate(cfg, out / name);
        row.status = "ok";
      } catch (const std::exception& e) {
        row.status = "error";
        row.code = exit_code_for(e);
        row.message = one_line(e.what());
        spdlog::warn("sweep row {} ({} = {}) failed: {}", i, templ.sweep_key, row.value, e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(workers), rows.size());
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("nan"); };
  std::ostringstream os;
  os << "row\t" << templ.sweep_key
     << "\tstatus\texit_code\tsteps\tN_max\texp_w\texp_z\texp_w_x\texp_z_x\tmanifest_sha\tmessage\n";
  int failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    failed += r.status == "ok" ? 0 : 1;
    const bool ok = r.status == "ok";
    os << i << '\t' << r.value << '\t' << r.status << '\t' << r.code << '\t'
       << (ok ? std::to_string(r.summary.steps) : "0") << '\t'
       << (ok ? format_double(r.summary.n_max) : "nan") << '\t' << opt(r.summary.exp_w) << '\t'
       << opt(r.summary.exp_z) << '\t' << opt(r.summary.exp_wx) << '\t' << opt(r.summary.exp_zx)
       << '\t' << r.summary.manifest_sha << '\t' << r.message << '\n';
  }
  write_file(out / "sweep_table.tsv", os.str());
  spdlog::info("sweep finished: {} of {} rows ok", rows.size() - failed, rows.size());
  return failed;
}

}  // namespace diffwave::cli
