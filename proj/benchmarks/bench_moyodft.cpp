#include <benchmark/benchmark.h>

#include "moyodft/convex_core.hpp"
#include "moyodft/lattice_model.hpp"
#include "moyodft/lieb_dual.hpp"
#include "moyodft/oracles.hpp"
#include "moyodft/scf_solvers.hpp"

using namespace moyodft;

namespace {

LatticeSpec chain(int sites, int electrons, double u) {
  LatticeSpec s;
  s.sites = sites;
  s.electrons = electrons;
  s.hopping = 0.5;
  s.interaction_strength = u;
  return s;
}

Vector alternating(int sites) {
  Vector v(sites);
  for (int i = 0; i < sites; ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
  return v;
}

void bm_dimer_prox(benchmark::State& state) {
  FunctionOracle f = dimer_lieb_oracle(0.5);
  Vector x(2);
  x << 0.6, 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(moreau_envelope(f, 0.1, x));
  }
}
BENCHMARK(bm_dimer_prox);

void bm_ground_state_l4(benchmark::State& state) {
  LatticeSpec spec = chain(4, 2, 1.0);
  ManyBodySolver solver(spec);
  Vector v = alternating(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.solve(v));
  }
}
BENCHMARK(bm_ground_state_l4);

void bm_regularize_trimer(benchmark::State& state) {
  LiebFunctional F(chain(3, 2, 1.0));
  Vector rho(3);
  rho << 0.7, 0.6, 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(F.regularize(0.1, rho));
  }
}
BENCHMARK(bm_regularize_trimer);

void bm_myksoda_trimer(benchmark::State& state) {
  LatticeSpec spec = chain(3, 2, 1.0);
  Vector v = alternating(3);
  ScfConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(myksoda(spec, v, cfg));
  }
}
BENCHMARK(bm_myksoda_trimer);

}  // namespace

BENCHMARK_MAIN();
