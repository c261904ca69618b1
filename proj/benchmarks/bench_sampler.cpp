#include "hsgw/model_io.hpp"
#include "hsgw/sampler.hpp"
#include "hsgw/tree.hpp"

#include <benchmark/benchmark.h>

#include <variant>

using namespace hsgw;

namespace {

const OffspringModel& stable15()
{
    static const OffspringModel m = build_model({.family = "stable", .alpha = 1.5});
    return m;
}

const OffspringModel& log_power()
{
    static const OffspringModel m = build_model({.family = "log_power", .kappa = 1.0});
    return m;
}

void BM_GwStats(benchmark::State& state)
{
    GwSampler s(stable15(), {.seed = 1, .max_nodes = state.range(0)});
    std::int64_t nodes = 0;
    for (auto _ : state) {
        const auto r = s.sample_gw_stats();
        nodes += r.stats.size;
        benchmark::DoNotOptimize(r.stats.strahler);
    }
    state.counters["nodes/s"] = benchmark::Counter(double(nodes), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_GwStats)->Arg(1'000)->Arg(1'000'000);

void BM_ExactSizeStats(benchmark::State& state, const OffspringModel& (*model)())
{
    GwSampler s(model(), {.seed = 2});
    const std::int64_t n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(s.sample_exact_size_stats(n).strahler);
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK_CAPTURE(BM_ExactSizeStats, stable15, stable15)->RangeMultiplier(16)->Range(256, 65536);
BENCHMARK_CAPTURE(BM_ExactSizeStats, log_power, log_power)->RangeMultiplier(10)->Range(100, 10'000);

void BM_ExactSizeTree(benchmark::State& state)
{
    GwSampler s(stable15(), {.seed = 3});
    const std::int64_t n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(s.sample_exact_size(n).size());
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ExactSizeTree)->Arg(4096)->Arg(65536);

void BM_Strahler(benchmark::State& state)
{
    GwSampler s(stable15(), {.seed = 4});
    const Tree t = s.sample_exact_size(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(strahler(t));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Strahler)->Arg(4096)->Arg(262'144);

void BM_StrahlerViaPruning(benchmark::State& state)
{
    GwSampler s(stable15(), {.seed = 4});
    const Tree t = s.sample_exact_size(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(strahler_via_pruning(t));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StrahlerViaPruning)->Arg(4096)->Arg(262'144);

} // namespace
