#include <benchmark/benchmark.h>

#include "fcpool/inversion.hpp"
#include "fcpool/kernels.hpp"
#include "fcpool/simulator.hpp"
#include "fcpool/transient.hpp"
#include "fcpool/waiting.hpp"

namespace fcpool {
namespace {

// Tables plus the scalar recursion at k = 20, as in the scaling check.
void BM_PgfValue(benchmark::State& state)
{
    int const m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto const tables = build_tables(RatePlan::constant(1.0, m), ServiceLaw::exponential(1.5), 0.7);
        benchmark::DoNotOptimize(pgf_value(20, tables, Complex(0.6, 0.0)));
    }
    state.SetComplexityN(m);
}
BENCHMARK(BM_PgfValue)->RangeMultiplier(2)->Range(25, 400)->Complexity(benchmark::oNCubed);

void BM_BuildTables(benchmark::State& state)
{
    int const m = static_cast<int>(state.range(0));
    ServiceLaw const laws[2] = {ServiceLaw::erlang(2, 2.0), ServiceLaw::deterministic(0.8)};
    ServiceLaw const& law = laws[state.range(1)];
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_tables(RatePlan::constant(0.7, m), law, 0.9));
    }
}
BENCHMARK(BM_BuildTables)->ArgsProduct({{8, 32, 128}, {0, 1}});

void BM_PgfCoefficients(benchmark::State& state)
{
    int const m = static_cast<int>(state.range(0));
    auto const tables = build_tables(RatePlan::constant(1.0, m), ServiceLaw::erlang(2, 2.0), 0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pgf_coefficients(5, tables));
    }
}
BENCHMARK(BM_PgfCoefficients)->Arg(8)->Arg(16)->Arg(32);

void BM_PmfAtTime(benchmark::State& state)
{
    InversionConfig cfg;
    cfg.method = state.range(0) == 0 ? InversionMethod::euler : InversionMethod::talbot;
    Model const model(2, RatePlan::proportional(0.7, 6), ServiceLaw::erlang(2, 2.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pmf_at_time(model, 1.5, cfg));
    }
}
BENCHMARK(BM_PmfAtTime)->Arg(0)->Arg(1);

void BM_WaitingMeans(benchmark::State& state)
{
    int const m = static_cast<int>(state.range(0));
    Model const model(3, RatePlan::constant(0.7, m), ServiceLaw::erlang(2, 2.0));
    for (auto _ : state) {
        WaitingTimes const w(model);
        benchmark::DoNotOptimize(w.mean(model.customers()));
    }
}
BENCHMARK(BM_WaitingMeans)->Arg(8)->Arg(32);

void BM_Simulate(benchmark::State& state)
{
    Model const model(2, RatePlan::proportional(0.7, 3), ServiceLaw::erlang(2, 2.0));
    SimConfig cfg(model);
    cfg.gamma = 0.8;
    cfg.replications = 100000;
    cfg.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(cfg));
    }
    state.SetItemsProcessed(state.iterations() * cfg.replications);
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fcpool

BENCHMARK_MAIN();
