#include "hsgw/exact.hpp"
#include "hsgw/generating.hpp"
#include "hsgw/model_io.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace hsgw;

namespace {

void BM_TailTable(benchmark::State& state, std::string family, double alpha, double kappa)
{
    ModelSpec spec{.family = family};
    if (alpha > 0) spec.alpha = alpha;
    if (kappa > 0) spec.kappa = kappa;
    const GeneratingOracle oracle(build_model(spec));
    for (auto _ : state) benchmark::DoNotOptimize(tail_table(oracle, state.range(0)).Q.back());
}
BENCHMARK_CAPTURE(BM_TailTable, binary, "binary", 0.0, 0.0)->Arg(1000);
BENCHMARK_CAPTURE(BM_TailTable, stable15, "stable", 1.5, 0.0)->Arg(1000);
BENCHMARK_CAPTURE(BM_TailTable, log_power, "log_power", 0.0, 1.0)->Arg(1000);

void BM_Psi(benchmark::State& state)
{
    const GeneratingOracle oracle(build_model({.family = "log_power", .kappa = 1.0}));
    double s = 1e-9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle.psi(s));
        s = s < 0.5 ? s * 1.7 : 1e-9;
    }
}
BENCHMARK(BM_Psi);

void BM_Upsilon(benchmark::State& state)
{
    const GeneratingOracle oracle(build_model({.family = "log_power", .kappa = 1.0}));
    for (auto _ : state) benchmark::DoNotOptimize(oracle.upsilon(1e-3));
}
BENCHMARK(BM_Upsilon);

} // namespace
BENCHMARK_MAIN();
