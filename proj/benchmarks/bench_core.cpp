#include <benchmark/benchmark.h>

#include "catlight/analysis.hpp"
#include "catlight/dicke.hpp"
#include "catlight/photon.hpp"
#include "catlight/trajectory.hpp"

using namespace catlight;

namespace {

DickeConfig reference_config() {
  DickeConfig cfg;  // delta = mu = omega = 1, gamma = 1e-3, cutoff = 100
  return cfg;
}

void BM_SparseHamiltonianApply(benchmark::State& state) {
  DickeConfig cfg = reference_config();
  cfg.cutoff = static_cast<std::size_t>(state.range(0));
  ComplexVector psi = initial_full_state(cfg, cat_fock(Complex{0.5, 0.0}, cfg.cutoff));
  ComplexVector out(psi.size());
  for (auto _ : state) {
    apply_full_hamiltonian(cfg, psi, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SparseHamiltonianApply)->Arg(100)->Arg(400);

void BM_FullEvolutionStep(benchmark::State& state) {
  DickeConfig cfg = reference_config();
  cfg.t_max = cfg.dt * 100.0;  // 100 steps per iteration
  const FockVector photon = cat_fock(Complex{0.5, 0.0}, cfg.cutoff);
  for (auto _ : state) {
    TwoBodyMatrix last;
    evolve_full(cfg, photon,
                [&last](const FullState& s) { last = partial_trace_photon(s); });
    benchmark::DoNotOptimize(last.m.data());
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_FullEvolutionStep)->Unit(benchmark::kMillisecond);

void BM_TrajectoryEvolution(benchmark::State& state) {
  DickeConfig cfg = reference_config();
  cfg.t_max = 10.0;  // 1000 steps
  const PAtom itf = cat_p(Complex{0.5, 0.0}).atoms[2];
  for (auto _ : state) {
    TrajectoryState last;
    evolve_trajectory(itf, cfg, TheoryMode::sudarshan_glauber,
                      [&last](const TrajectoryState& s) { last = s; });
    benchmark::DoNotOptimize(last.rho.data());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_TrajectoryEvolution)->Unit(benchmark::kMillisecond);

void BM_PartialTrace(benchmark::State& state) {
  DickeConfig cfg = reference_config();
  FullState s{initial_full_state(cfg, cat_fock(Complex{0.5, 0.0}, cfg.cutoff)), 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_trace_photon(s).m.data());
  }
}
BENCHMARK(BM_PartialTrace);

void BM_InterferenceDecomposition(benchmark::State& state) {
  DickeConfig cfg = reference_config();
  FullState s{initial_full_state(cfg, cat_fock(Complex{0.5, 0.0}, cfg.cutoff)), 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_interference(s, Complex{0.5, 0.0}).pp.m.data());
  }
}
BENCHMARK(BM_InterferenceDecomposition);

void BM_Negativity(benchmark::State& state) {
  TwoBodyMatrix bell;
  bell.hermitian = true;
  bell.m(0, 0) = bell.m(0, 3) = bell.m(3, 0) = bell.m(3, 3) = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(negativity(bell));
  }
}
BENCHMARK(BM_Negativity);

void BM_JacobiEigenvalues(benchmark::State& state) {
  DickeConfig cfg = reference_config();
  cfg.cutoff = 10;
  const ComplexMatrix h = build_full_hamiltonian(cfg);  // 44 x 44 Hermitian
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eigenvalues(h));
  }
}
BENCHMARK(BM_JacobiEigenvalues)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
