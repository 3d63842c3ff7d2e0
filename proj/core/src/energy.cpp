#include "diffwave/energy.hpp"

#include <sstream>

#include "diffwave/error.hpp"
#include "diffwave/norms.hpp"
#include "diffwave/stencil.hpp"

namespace diffwave {

double quadratic_form(double lambda, double mu, double K, double w, double z) noexcept {
  return 0.5 * lambda * w * w + 0.5 * K * z * z - mu * w * z;
}

bool is_positive_definite(double lambda, double mu, double K) noexcept {
  return lambda * K > mu * mu;
}

double default_energy_weight(const ModelParams& params) noexcept {
  return 2.0 * params.mu * params.mu / params.lambda + 1.0;
}

namespace {

double integral_of(const Grid& g, const Field& f) { return trapezoid(f, g.dx); }

double form_integral(const Grid& g, double lambda, double mu, double K, const Field& w,
                     const Field& z) {
  Field q(g.n);
  for (std::size_t i = 0; i < g.n; ++i) q[i] = quadratic_form(lambda, mu, K, w[i], z[i]);
  return integral_of(g, q);
}

double square_integral(const Grid& g, const Field& f) {
  const double n = l2_norm(f, g);
  return n * n;
}

}  // namespace

EnergyLedger energy_ledger(const PerturbationHistory& h, double K) {
  if (!is_positive_definite(h.lambda, h.mu, K)) {
    std::ostringstream os;
    os << "energy weight K = " << K << " must satisfy lambda K > mu^2 (lambda = " << h.lambda
       << ", mu = " << h.mu << ")";
    throw ConfigError(os.str());
  }
  const Grid& g = h.grid;
  EnergyLedger e;
  e.K = K;
  for (std::size_t m = 0; m < h.t.size(); ++m) {
    const Field& w = h.w[m];
    const Field& z = h.z[m];
    const Field wx = dx1(w, g), zx = dx1(z, g);
    const Field wxx = dx2(w, g), zxx = dx2(z, g);
    Field c(g.n), cx(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      c[i] = h.lambda * w[i] - h.mu * z[i];
      cx[i] = h.lambda * wx[i] - h.mu * zx[i];
    }
    e.t.push_back(h.t[m]);
    e.quadratic.push_back(form_integral(g, h.lambda, h.mu, K, w, z));
    e.quadratic_x.push_back(form_integral(g, h.lambda, h.mu, K, wx, zx));
    e.w_x2.push_back(square_integral(g, wx));
    e.z_x2.push_back(square_integral(g, zx));
    e.combo2.push_back(square_integral(g, c));
    e.w_xx2.push_back(square_integral(g, wxx));
    e.z_xx2.push_back(square_integral(g, zxx));
    e.combo_x2.push_back(square_integral(g, cx));
    if (h.half_line) {
      e.boundary_w.push_back(w[0] * wx[0]);
      e.boundary_z.push_back(z[0] * zx[0]);
    } else {
      e.boundary_w.push_back(0.0);
      e.boundary_z.push_back(0.0);
    }
  }
  return e;
}

}  // namespace diffwave
