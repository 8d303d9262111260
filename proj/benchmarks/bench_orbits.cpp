#include "orbitscope/simulate.hpp"
#include "orbitscope/transitions.hpp"

#include <benchmark/benchmark.h>

using namespace orbitscope;

namespace {

const PanelDataset& fig4_panel()
{
    static const PanelDataset panel = simulate_population(*preset("fig4", 1));
    return panel;
}

void BM_BuildOrbitsFig4(benchmark::State& state)
{
    const auto& panel = fig4_panel();
    const auto pop = population_frequencies(panel.subjects);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(build_orbits(panel.subjects, pop, threads));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(panel.subjects.size()));
}
BENCHMARK(BM_BuildOrbitsFig4)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_AccumulateFig4(benchmark::State& state)
{
    const auto& panel = fig4_panel();
    const auto orbits = build_orbits(panel.subjects, population_frequencies(panel.subjects));
    for (auto _ : state)
        benchmark::DoNotOptimize(accumulate_transitions(orbits, "all"));
}
BENCHMARK(BM_AccumulateFig4)->Unit(benchmark::kMillisecond);

void BM_PermRank(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const auto order = perm_unrank(factorial(n) / 3, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(perm_rank(order));
}
BENCHMARK(BM_PermRank)->Arg(3)->Arg(8)->Arg(13);

void BM_StateFromId(benchmark::State& state)
{
    const StateSpace space(13);
    StateId id = 1;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(state_from_id(id, 13));
        id = id * 6364136223846793005ull % space.size() + 1;
    }
}
BENCHMARK(BM_StateFromId);

void BM_SimulateFig3(benchmark::State& state)
{
    const auto config = *preset("fig3", 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_population(config));
}
BENCHMARK(BM_SimulateFig3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
