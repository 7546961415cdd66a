#include <benchmark/benchmark.h>

#include "thomstem/ahss.hpp"
#include "thomstem/scenario.hpp"

using namespace thomstem;

namespace {

chern::ManifoldData tori(int n) {
    chern::ManifoldData m = chern::make_homology_torus(3);
    for (int i = 1; i < n; ++i) m = chern::connected_sum(m, chern::make_homology_torus(2 * i + 3));
    return m;
}

void BM_ExpCurvature(benchmark::State& state) {
    const int rank = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(chern::exp_curvature(rank));
}
BENCHMARK(BM_ExpCurvature)->Arg(4)->Arg(8)->Arg(12);

void BM_ChernCharacter(benchmark::State& state) {
    const auto m = tori(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(chern::chern_character_index(m));
}
BENCHMARK(BM_ChernCharacter)->Arg(1)->Arg(2)->Arg(3);

void BM_InferAttachments(benchmark::State& state) {
    const auto bundle = chern::index_bundle(tori(static_cast<int>(state.range(0))));
    const auto cells = cells::thom_cells(bundle);
    for (auto _ : state) benchmark::DoNotOptimize(cells::infer_attachments(cells));
    state.counters["cells"] = static_cast<double>(cells.cells().size());
}
BENCHMARK(BM_InferAttachments)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_AssembleSec4(benchmark::State& state) {
    const auto c = cells::suspend(cells::infer_attachments(cells::thom_cells(chern::index_bundle(tori(2)))), 1);
    for (auto _ : state) benchmark::DoNotOptimize(ahss::assemble(c, 10));
}
BENCHMARK(BM_AssembleSec4)->Unit(benchmark::kMillisecond);

void BM_Preset(benchmark::State& state) {
    const auto spec = state.range(0) == 3   ? scenario::preset_sec3(5)
                      : state.range(0) == 4 ? scenario::preset_sec4(3, 5)
                                            : scenario::preset_sec5(3, 5);
    for (auto _ : state) benchmark::DoNotOptimize(scenario::report_json(scenario::run(spec)).dump());
}
BENCHMARK(BM_Preset)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
