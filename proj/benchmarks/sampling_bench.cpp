#include <benchmark/benchmark.h>

#include "simbias/analysis.hpp"
#include "simbias/maps.hpp"
#include "simbias/sampling.hpp"

namespace {

void BM_SampleFst(benchmark::State& state) {
    const simbias::maps::InputOutputMap m(simbias::maps::fst_random(5, 30, 0));
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simbias::sampling::sample_distribution(m, n, 1, 1, 1).distinct());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_SampleFst)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_EnumerateFst16(benchmark::State& state) {
    const simbias::maps::InputOutputMap m(simbias::maps::fst_random(5, 16, 0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simbias::sampling::enumerate_distribution(m, 1 << 20, 1).distinct());
    }
}
BENCHMARK(BM_EnumerateFst16)->Unit(benchmark::kMillisecond);

void BM_PairPrediction(benchmark::State& state) {
    const auto d = simbias::sampling::enumerate_distribution(
        simbias::maps::InputOutputMap(simbias::maps::fst_random(5, 16, 0)), 1 << 20, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simbias::analysis::pair_prediction_experiment(d, simbias::analysis::PairMode::weighted, 10000, 1).correct);
    }
}
BENCHMARK(BM_PairPrediction)->Unit(benchmark::kMillisecond);

}  // namespace
