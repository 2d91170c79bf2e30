// Serial reference vs OpenMP kernels. Run with e.g.
//   ./bench_kernels --benchmark_counters_tabular=true
// Thread counts above the machine's core count only measure overhead.

#include "airnet/batch_kernels.hpp"
#include "airnet/experiments.hpp"
#include "airnet/rng.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace airnet;

const ValuationDistribution kU01 = ValuationDistribution::uniform(0.0, 1.0);

void BM_LossAndGrad(benchmark::State &state) {
  const auto threads = static_cast<int>(state.range(0));
  const auto batch_size = static_cast<std::size_t>(state.range(1));
  const MonotoneNetParams p = init_params(5, 5, 3, 1);
  std::mt19937_64 rng(2);
  const auto batch = draw_profiles(rng, kU01, 5, batch_size);
  for (auto _ : state) {
    LossAndGrad lg = threads <= 1 ? loss_and_grad_serial(p, batch, 100.0)
                                  : loss_and_grad_parallel(p, batch, 100.0, threads);
    benchmark::DoNotOptimize(lg.loss);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch_size));
}
BENCHMARK(BM_LossAndGrad)
    ->ArgsProduct({{1, 2, 4, 8}, {1024, 4096, 16384}})
    ->ArgNames({"threads", "batch"})
    ->UseRealTime();

void BM_RevenueGap(benchmark::State &state) {
  const auto threads = static_cast<int>(state.range(0));
  const MonotoneNetParams p = init_params(5, 5, 3, 1);
  for (auto _ : state) {
    auto records = revenue_gap(p, kU01, 10000, 3, threads);
    benchmark::DoNotOptimize(records.data());
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_RevenueGap)->Arg(1)->Arg(2)->Arg(4)->ArgName("threads")->UseRealTime();

void BM_EvaluateRevenue(benchmark::State &state) {
  const auto threads = static_cast<int>(state.range(0));
  const MonotoneNetParams p = init_params(5, 5, 3, 1);
  for (auto _ : state) {
    const RevenueReport r = evaluate_revenue(p, kU01, 20000, 4, threads);
    benchmark::DoNotOptimize(r.dla.mean);
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_EvaluateRevenue)->Arg(1)->Arg(2)->Arg(4)->ArgName("threads")->UseRealTime();

} // namespace

BENCHMARK_MAIN();
