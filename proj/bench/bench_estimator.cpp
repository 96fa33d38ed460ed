// SPDX-License-Identifier: Apache-2.0
//
// OpenMP estimator against its serial reference, plus the density kernels
// that dominate its cost. Run with OMP_NUM_THREADS set to compare scaling.
#include <benchmark/benchmark.h>

#include "splitrx/density.hpp"
#include "splitrx/mi_estimator.hpp"

namespace {

using namespace splitrx;

const ChannelParams kNarrowAntenna{100.0, 1.0, {0.01, 1.0, 0.01}};

EstimatorConfig bench_config(std::size_t n) {
    EstimatorConfig cfg;
    cfg.n_outer = n;
    cfg.n_batches = 8;
    return cfg;
}

void BM_EstimateParallel(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(estimate_mi(kNarrowAntenna, SplittingRatio(0.56), cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateSerial(benchmark::State& state) {
    const auto cfg = bench_config(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_mi_serial(kNarrowAntenna, SplittingRatio(0.56), cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CollapsedConditional(benchmark::State& state) {
    const EnvelopeQuadrature quad(static_cast<int>(state.range(0)));
    const SplittingRatio rho(0.56);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            log_pdf_pair_given_x_collapsed({5.0, -3.0}, 5.5, {0.7, -0.4}, kNarrowAntenna, rho, quad));
}

void BM_HermiteConditional(benchmark::State& state) {
    const QuadratureRule rule(static_cast<int>(state.range(0)));
    const SplittingRatio rho(0.56);
    for (auto _ : state)
        benchmark::DoNotOptimize(log_pdf_pair_given_x({5.0, -3.0}, 5.5, {0.7, -0.4}, kNarrowAntenna, rho, rule));
}

}  // namespace

BENCHMARK(BM_EstimateParallel)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateSerial)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CollapsedConditional)->Arg(16)->Arg(32);
BENCHMARK(BM_HermiteConditional)->Arg(32)->Arg(64);

BENCHMARK_MAIN();
