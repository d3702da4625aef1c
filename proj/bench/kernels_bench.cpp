// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "cgt/crs.hpp"
#include "cgt/primes.hpp"
#include "cgt/rake_winnow.hpp"
#include "cgt/verify.hpp"

namespace {

using namespace cgt;

cgt::Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::kSerial : Exec::kParallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

// C(48,3) subsets against a 3-disjunct CRS matrix.
void BM_DisjunctCrs(benchmark::State& state) {
  const auto m = build_crs_matrix(48, select_prime_plan(48, 3));
  for (auto _ : state) benchmark::DoNotOptimize(check_d_disjunct(m, 3, {}, exec_of(state)));
  label(state);
}
BENCHMARK(BM_DisjunctCrs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ResolvableRw(benchmark::State& state) {
  const auto m = build_rw_matrix(make_rw_params(40, 3, 3, 1));
  for (auto _ : state) benchmark::DoNotOptimize(check_dk_resolvable(m, 3, 3, {}, exec_of(state)));
  label(state);
}
BENCHMARK(BM_ResolvableRw)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TwoStageTrials(benchmark::State& state) {
  TrialPlan plan;
  plan.base = make_rw_params(256, 4, 4, 1);
  plan.trials = 500;
  for (auto _ : state) benchmark::DoNotOptimize(run_trials(plan, exec_of(state)));
  label(state);
}
BENCHMARK(BM_TwoStageTrials)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Pruned exponent search against the unpruned reference recursion.
void BM_ExponentSearch(benchmark::State& state) {
  const auto primes = first_primes(8);
  const BigInt target = pow_big(60, 4);
  for (auto _ : state) {
    if (state.range(0) == 0) {
      benchmark::DoNotOptimize(optimize_exponents_exhaustive(primes, 19, target));
    } else {
      benchmark::DoNotOptimize(optimize_exponents(primes, 19, target));
    }
  }
  state.SetLabel(state.range(0) == 0 ? "exhaustive" : "branch-and-bound");
}
BENCHMARK(BM_ExponentSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
