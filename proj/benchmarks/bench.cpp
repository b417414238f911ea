#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "noon_ent/channels.hpp"
#include "noon_ent/quasiprob.hpp"
#include "noon_ent/sep.hpp"
#include "noon_ent/witness.hpp"

#ifdef NOON_ENT_BENCH_SWEEP
#include "sweep.hpp"
#endif

using namespace noon_ent;

namespace {

NoisyNoonOperator random_operator(int n_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> a(n_max), b(n_max);
  std::vector<Complex> c(n_max);
  for (int i = 0; i < n_max; ++i) {
    a[i] = g(rng);
    b[i] = g(rng);
    c[i] = {g(rng), g(rng)};
  }
  return make_noisy_noon(g(rng), a, b, c, false);
}

NoisyNoonOperator dephased_state(int n) {
  const PhasePair dist{PhaseDistribution::delta(), PhaseDistribution::wrapped_gaussian(0.3)};
  return apply_dephasing(pure_noon_state(n), dist);
}

void BM_SepAnalytic(benchmark::State& state) {
  const auto op = random_operator(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve_sep_analytic(op));
}
BENCHMARK(BM_SepAnalytic)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

void BM_SepNumeric(benchmark::State& state) {
  const auto dense = to_dense(random_operator(static_cast<int>(state.range(0)), 2));
  NumericSepOptions opts;
  opts.restarts = 64;
  opts.max_iter = 20;
  opts.polish_evals = 20;
  for (auto _ : state) benchmark::DoNotOptimize(solve_sep_numeric(dense, opts));
}
BENCHMARK(BM_SepNumeric)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Quasiprob(benchmark::State& state) {
  const auto s = dephased_state(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_quasiprob(s));
}
BENCHMARK(BM_Quasiprob)->Arg(1)->Arg(2)->Arg(4);

void BM_Witness(benchmark::State& state) {
  const auto l = vacuum_interference_operator(2);
  const auto s = dephased_state(2);
  for (auto _ : state) benchmark::DoNotOptimize(witness_value(l, s));
}
BENCHMARK(BM_Witness);

#ifdef NOON_ENT_BENCH_SWEEP
void BM_Sweep(benchmark::State& state) {
  cli::SweepSpec spec;
  spec.parameter = cli::SweepParameter::delta;
  spec.start = 0.0;
  spec.stop = 1.2;
  spec.steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cli::run_sweep(spec, 1));
}
BENCHMARK(BM_Sweep)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);
#endif

}  // namespace

BENCHMARK_MAIN();
