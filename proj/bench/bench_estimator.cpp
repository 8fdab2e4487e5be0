// Copyright 2026 The branchpde Authors
// SPDX-License-Identifier: Apache-2.0
// Serial reference vs OpenMP estimator on the b2 problem.
#include <benchmark/benchmark.h>

#include <vector>

#include "branchpde/estimator.hpp"

using namespace branchpde;

namespace {

const Problem& b2()
{
    static const Problem p = b2_problem(0.1);
    return p;
}

void BM_Serial(benchmark::State& state)
{
    EstimatorConfig cfg;
    cfg.n = state.range(0);
    const auto model = LifetimeModel::exponential(1.0);
    const std::vector<double> x{0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_u_serial(identity_code(1), 0.0, x, 0.1, b2(), model, cfg).mean);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OpenMP(benchmark::State& state)
{
    EstimatorConfig cfg;
    cfg.n = state.range(0);
    cfg.workers = static_cast<int>(state.range(1));
    const auto model = LifetimeModel::exponential(1.0);
    const std::vector<double> x{0.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_u(identity_code(1), 0.0, x, 0.1, b2(), model, cfg).mean);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_Serial)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->Args({20000, 1})->Args({20000, 2})->Args({20000, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
