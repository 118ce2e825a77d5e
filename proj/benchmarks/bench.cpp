#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "rightsize/curve.hpp"
#include "rightsize/ingest.hpp"
#include "rightsize/profiler.hpp"

namespace {

using namespace rightsize;

PerfTraceSet random_set(int timestamps, int dims, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    static const Dimension all[] = {Dimension::Cpu, Dimension::Memory, Dimension::Iops,
                                    Dimension::LogRate, Dimension::Storage,
                                    Dimension::IoLatency};
    PerfTraceSet set;
    set.object_id = "bench";
    Timestamp ts{};
    for (int d = 0; d < dims; ++d) {
        PerfTrace trace;
        trace.dimension = all[d];
        for (int i = 0; i < timestamps; ++i)
            trace.samples.push_back({ts + kDefaultInterval * i, value(rng)});
        set.traces[all[d]] = std::move(trace);
    }
    return set;
}

void BM_ThrottlingProbability(benchmark::State& state) {
    const int timestamps = static_cast<int>(state.range(0));
    PerfTraceSet set = random_set(timestamps, 4, 1);
    ResourceLimits limits;
    limits.set(Dimension::Cpu, 50.0);
    limits.set(Dimension::Memory, 75.0);
    limits.set(Dimension::Iops, 25.0);
    limits.set(Dimension::LogRate, 90.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(throttling_probability(set, limits));
    state.SetItemsProcessed(state.iterations() * timestamps);
}
BENCHMARK(BM_ThrottlingProbability)->Arg(1008)->Arg(4032)->Arg(52000);

void BM_BuildCurve(benchmark::State& state) {
    const int skus = static_cast<int>(state.range(0));
    PerfTraceSet set = random_set(4032, 4, 2);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> limit(0.0, 120.0);
    std::vector<Candidate> candidates;
    for (int i = 0; i < skus; ++i) {
        SkuSpec sku;
        sku.id = "S" + std::to_string(i);
        sku.deployment = Deployment::Db;
        sku.vcores = 2;
        sku.monthly_price = 10.0 * (i + 1);
        sku.limits.set(Dimension::Cpu, limit(rng));
        sku.limits.set(Dimension::Memory, limit(rng));
        sku.limits.set(Dimension::Iops, limit(rng));
        sku.limits.set(Dimension::LogRate, limit(rng));
        candidates.push_back({sku, sku.limits});
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(build_curve(set, candidates));
    state.SetItemsProcessed(state.iterations() * skus);
}
BENCHMARK(BM_BuildCurve)->Arg(20)->Arg(100)->Arg(200);

void BM_MinMaxAuc(benchmark::State& state) {
    PerfTraceSet set = random_set(static_cast<int>(state.range(0)), 1, 4);
    const PerfTrace& trace = set.traces.begin()->second;
    for (auto _ : state)
        benchmark::DoNotOptimize(negotiability_minmax_auc(trace));
}
BENCHMARK(BM_MinMaxAuc)->Arg(1008)->Arg(10080);

void BM_StlScore(benchmark::State& state) {
    PerfTraceSet set = random_set(static_cast<int>(state.range(0)), 1, 5);
    const PerfTrace& trace = set.traces.begin()->second;
    for (auto _ : state)
        benchmark::DoNotOptimize(negotiability_stl(trace, 144));
}
BENCHMARK(BM_StlScore)->Arg(1008)->Arg(10080);

void BM_Resample(benchmark::State& state) {
    PerfTraceSet set = random_set(static_cast<int>(state.range(0)), 1, 6);
    const PerfTrace& trace = set.traces.begin()->second;
    for (auto _ : state)
        benchmark::DoNotOptimize(resample(trace, kDefaultInterval));
}
BENCHMARK(BM_Resample)->Arg(1008)->Arg(10080);

}  // namespace

BENCHMARK_MAIN();
