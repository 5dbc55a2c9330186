#include <benchmark/benchmark.h>

#include "qtherm/evolution.hpp"
#include "qtherm/generator.hpp"
#include "qtherm/models.hpp"
#include "qtherm/random_states.hpp"
#include "qtherm/thermo.hpp"

using namespace qtherm;

namespace {

void BM_Dissipator2N(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BuiltModel bm = build_2n_model({n, 1.0, 1.0, 1.0});
  const DensityMatrix rho = build_plus_state(PlusStateSpec(TwoNModelSpec{n, 1.0, 1.0, 1.0}, 0.2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_dissipator(bm.model, rho.mat()));
  }
  state.SetComplexityN(2 * n);
}
BENCHMARK(BM_Dissipator2N)->Arg(4)->Arg(16)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_DissipatorDense(benchmark::State& state) {
  // Same model with the low-rank factorization disabled: the dense path.
  const int n = static_cast<int>(state.range(0));
  BuiltModel bm = build_2n_model({n, 1.0, 1.0, 1.0});
  for (auto& b : bm.model.baths)
    for (auto& ch : b.channels) ch.factor_rank = 0;
  const DensityMatrix rho = build_plus_state(PlusStateSpec(TwoNModelSpec{n, 1.0, 1.0, 1.0}, 0.2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_dissipator(bm.model, rho.mat()));
  }
}
BENCHMARK(BM_DissipatorDense)->Arg(4)->Arg(16)->Arg(64)->Arg(128);

void BM_Rk4StepTwoQubit(benchmark::State& state) {
  const BuiltModel bm = build_two_qubit_model({2.0, 0.6, 1.0});
  Rng rng(1);
  Mat rho = random_density_matrix(4, rng).mat();
  for (auto _ : state) {
    rho = rk4_step(bm.model, rho, 1e-4);
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_Rk4StepTwoQubit);

void BM_EntropyProduction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BuiltModel bm = build_2n_model({n, 1.0, 1.0, 1.0});
  const DensityMatrix rho = build_plus_state(PlusStateSpec(TwoNModelSpec{n, 1.0, 1.0, 1.0}, 0.2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_production_rate(bm.model, rho.mat()));
  }
}
BENCHMARK(BM_EntropyProduction)->Arg(4)->Arg(32)->Arg(128);

void BM_TradeoffCheck(benchmark::State& state) {
  const BuiltModel bm = build_2n_model({4, 1.0, 1.0, 1.0});
  Rng rng(2);
  const Mat rho = random_density_matrix(8, rng).mat();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tradeoff_check(bm.model, rho, bm.basis));
  }
}
BENCHMARK(BM_TradeoffCheck);

}  // namespace

BENCHMARK_MAIN();
