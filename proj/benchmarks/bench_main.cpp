#include <benchmark/benchmark.h>

#include <vector>

#include "diffwave/profile.hpp"
#include "diffwave/solver.hpp"
#include "diffwave/tridiag.hpp"

using namespace diffwave;

namespace {

// Diagonally dominant system like the implicit diffusion operators.
struct System {
  std::vector<double> lower, diag, upper, rhs;
  explicit System(std::size_t n) : lower(n, -1.0), diag(n, 4.0), upper(n, -1.0), rhs(n) {
    for (std::size_t i = 0; i < n; ++i) rhs[i] = static_cast<double>(i % 7) - 3.0;
  }
};

void BM_TridiagSolve(benchmark::State& st) {
  const System s(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    auto x = tridiag_solve(s.lower, s.diag, s.upper, s.rhs);
    benchmark::DoNotOptimize(x.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_TridiagSolve)->RangeMultiplier(4)->Range(256, 65536);

void BM_FactoredSolve(benchmark::State& st) {
  System s(static_cast<std::size_t>(st.range(0)));
  const TridiagonalFactorization f(s.lower, s.diag, s.upper);
  std::vector<double> work = s.rhs;
  for (auto _ : st) {
    work = s.rhs;
    f.solve_in_place(work);
    benchmark::DoNotOptimize(work.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_FactoredSolve)->RangeMultiplier(4)->Range(256, 65536);

ModelParams demo_params() {
  ModelParams p;
  p.u_minus = -0.025;
  p.u_plus = 0.025;
  return p;
}

// One IMEX step on a Cauchy grid; range(0) is the half width with dx = 0.1.
void BM_StepperAdvance(benchmark::State& st) {
  RunConfig c;
  c.params = demo_params();
  c.kind = CauchyKind{DiffusionWave(solve_profile_cauchy(c.params), c.params),
                      static_cast<double>(st.range(0))};
  c.grid = grid_for(c.kind, 0.1);
  c.dt = 0.05;
  c.t_final = 1.0;
  c.scheme.enforce_width = false;
  c.initial.z0 = GaussianBump{0.01, 0.0, 1.0};
  Stepper stepper(c);
  const State initial = init_state(c);
  State s = initial;
  std::size_t k = 0;
  for (auto _ : st) {
    // Restart periodically so the wave time stays in a fixed range.
    if (++k % 1000 == 0) s = initial;
    stepper.advance(s);
    benchmark::DoNotOptimize(s.u.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(c.grid.n));
}
BENCHMARK(BM_StepperAdvance)->Arg(20)->Arg(80)->Arg(320);

void BM_ShootCauchy(benchmark::State& st) {
  ModelParams p = demo_params();
  p.kappa = static_cast<double>(st.range(0));
  for (auto _ : st) {
    auto prof = solve_profile_cauchy(p);
    benchmark::DoNotOptimize(prof.anchor.phi0);
  }
}
BENCHMARK(BM_ShootCauchy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ShootHalfLine(benchmark::State& st) {
  const ModelParams p = demo_params();
  for (auto _ : st) {
    auto prof = solve_profile_halfline(p, 0.0);
    benchmark::DoNotOptimize(prof.anchor.phi0);
  }
}
BENCHMARK(BM_ShootHalfLine)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
