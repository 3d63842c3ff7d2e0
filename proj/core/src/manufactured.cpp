#include "diffwave/manufactured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diffwave/error.hpp"

namespace diffwave {

ManufacturedTarget cosine_decay_target() {
  ManufacturedTarget t;
  t.name = "exp(-t) cos(x)";
  t.u = [](double x, double s) { return std::exp(-s) * std::cos(x); };
  t.u_t = [](double x, double s) { return -std::exp(-s) * std::cos(x); };
  t.u_x = [](double x, double s) { return -std::exp(-s) * std::sin(x); };
  t.u_xx = [](double x, double s) { return -std::exp(-s) * std::cos(x); };
  t.rho = t.u;
  t.rho_t = t.u_t;
  t.rho_x = t.u_x;
  t.rho_xx = t.u_xx;
  return t;
}

ManufacturedTarget constant_target(double u0, double rho0) {
  ManufacturedTarget t;
  t.name = "constant";
  const auto zero = [](double, double) { return 0.0; };
  t.u = [u0](double, double) { return u0; };
  t.rho = [rho0](double, double) { return rho0; };
  t.u_t = t.u_x = t.u_xx = zero;
  t.rho_t = t.rho_x = t.rho_xx = zero;
  return t;
}

ManufacturedForcing make_forcing(const ModelParams& p, const ManufacturedTarget& tg) {
  ManufacturedForcing f;
  f.source_u = [p, tg](double x, double t) {
    return tg.u_t(x, t) - p.a * tg.u_xx(x, t) +
           p.kappa * (tg.u_x(x, t) * tg.rho_x(x, t) + tg.u(x, t) * tg.rho_xx(x, t));
  };
  f.source_rho = [p, tg](double x, double t) {
    return tg.rho_t(x, t) - p.b * tg.rho_xx(x, t) + p.lambda * tg.rho(x, t) -
           p.mu * tg.u(x, t);
  };
  f.exact_u = tg.u;
  f.exact_rho = tg.rho;
  return f;
}

MmsLadder default_mms_ladder() {
  MmsLadder l;
  for (double dx : {0.1, 0.05, 0.025}) l.spatial.emplace_back(dx, 0.25 * dx * dx);
  for (double dt : {0.0025, 0.00125, 0.000625}) l.temporal.emplace_back(0.005, dt);
  return l;
}

namespace {

ConvergenceLevel run_level(const RunConfig& base, const ManufacturedTarget& target,
                           double dx, double dt) {
  RunConfig cfg = base;
  cfg.grid = grid_for(cfg.kind, dx);
  cfg.dt = dt;
  cfg.output_times = {cfg.t_final};
  cfg.forcing = make_forcing(cfg.params, target);
  const RunResult r = run(cfg);
  const State& s = r.snapshots.back();
  ConvergenceLevel lvl;
  lvl.dx = cfg.grid.dx;
  lvl.dt = dt;
  for (std::size_t i = 0; i < cfg.grid.n; ++i) {
    const double x = cfg.grid.x(i);
    lvl.error_u = std::max(lvl.error_u, std::abs(s.u[i] - target.u(x, s.t)));
    lvl.error_rho = std::max(lvl.error_rho, std::abs(s.rho[i] - target.rho(x, s.t)));
  }
  lvl.error = std::max(lvl.error_u, lvl.error_rho);
  return lvl;
}

std::vector<double> orders(const std::vector<ConvergenceLevel>& levels, bool by_dx) {
  std::vector<double> out;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    const double h0 = by_dx ? levels[i - 1].dx : levels[i - 1].dt;
    const double h1 = by_dx ? levels[i].dx : levels[i].dt;
    const double e0 = levels[i - 1].error, e1 = levels[i].error;
    if (e0 > 0.0 && e1 > 0.0 && h0 != h1) {
      out.push_back(std::log(e0 / e1) / std::log(h0 / h1));
    } else {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

bool sufficient(const std::vector<ConvergenceLevel>& levels, const std::vector<double>& ord,
                double length, const char* label, std::string& note) {
  std::ostringstream os;
  if (levels.size() < 3) {
    os << label << ": insufficient refinement (" << levels.size() << " levels, need 3)";
  } else {
    const double finest = std::min_element(levels.begin(), levels.end(), [](auto& a, auto& b) {
                            return a.dx < b.dx;
                          })->dx;
    if (length / finest < 20.0 - 1e-9) {
      os << label << ": insufficient refinement (finest grid has fewer than 20 intervals)";
    } else {
      for (std::size_t i = 1; i < ord.size(); ++i) {
        if (!(std::abs(ord[i] - ord[i - 1]) <= 0.5)) {
          os << label << ": insufficient refinement (order estimates " << ord[i - 1] << " and "
             << ord[i] << " disagree)";
          break;
        }
      }
    }
  }
  const std::string msg = os.str();
  if (!msg.empty()) note += (note.empty() ? "" : "; ") + msg;
  return msg.empty();
}

}  // namespace

ConvergenceReport manufactured_residual(const RunConfig& base, const ManufacturedTarget& target,
                                        const MmsLadder& ladder) {
  if (std::holds_alternative<NeumannKind>(base.kind)) {
    for (double t : {0.0, 0.5 * base.t_final, base.t_final}) {
      if (std::abs(target.u_x(0.0, t)) > 1e-12 || std::abs(target.rho_x(0.0, t)) > 1e-12) {
        throw ConfigError("manufactured target '" + target.name +
                          "' is incompatible with the neumann closure at x = 0");
      }
    }
  }
  ConvergenceReport rep;
  for (const auto& [dx, dt] : ladder.spatial) rep.spatial.push_back(run_level(base, target, dx, dt));
  for (const auto& [dx, dt] : ladder.temporal) {
    rep.temporal.push_back(run_level(base, target, dx, dt));
  }
  rep.spatial_orders = orders(rep.spatial, true);
  rep.temporal_orders = orders(rep.temporal, false);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  rep.spatial_order = rep.spatial_orders.empty() ? nan : rep.spatial_orders.back();
  rep.temporal_order = rep.temporal_orders.empty() ? nan : rep.temporal_orders.back();
  const double length = grid_for(base.kind, 1.0).length();
  rep.spatial_sufficient = sufficient(rep.spatial, rep.spatial_orders, length, "spatial", rep.note);
  rep.temporal_sufficient =
      sufficient(rep.temporal, rep.temporal_orders, length, "temporal", rep.note);
  return rep;
}

}  // namespace diffwave
