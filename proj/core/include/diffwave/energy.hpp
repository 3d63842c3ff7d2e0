#pragma once

#include <vector>

#include "diffwave/params.hpp"
#include "diffwave/perturbation.hpp"

namespace diffwave {

/// lambda w^2 / 2 + K z^2 / 2 - mu w z.
double quadratic_form(double lambda, double mu, double K, double w, double z) noexcept;

/// True iff lambda K > mu^2, i.e. the form above is positive definite.
bool is_positive_definite(double lambda, double mu, double K) noexcept;

/// 2 mu^2 / lambda + 1.
double default_energy_weight(const ModelParams& params) noexcept;

/// Per-snapshot energy quantities of a perturbation history.
struct EnergyLedger {
  double K = 0.0;
  std::vector<double> t;
  std::vector<double> quadratic;    // int quadratic_form(w, z)
  std::vector<double> quadratic_x;  // int quadratic_form(w_x, z_x)
  std::vector<double> w_x2;         // int w_x^2
  std::vector<double> z_x2;         // int z_x^2
  std::vector<double> combo2;       // int (lambda w - mu z)^2
  std::vector<double> w_xx2;
  std::vector<double> z_xx2;
  std::vector<double> combo_x2;     // int ((lambda w - mu z)_x)^2
  std::vector<double> boundary_w;   // w(0) w_x(0); zero on the full line
  std::vector<double> boundary_z;   // z(0) z_x(0)
};

/// Throws ConfigError unless lambda K > mu^2.
EnergyLedger energy_ledger(const PerturbationHistory& history, double K);

}  // namespace diffwave
