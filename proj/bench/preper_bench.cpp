#include "preper/census.hpp"
#include "preper/heights.hpp"
#include "preper/nonarchimedean.hpp"

#include <benchmark/benchmark.h>

using namespace preper;

namespace {

std::vector<GridPoint> grid(int k) {
    std::vector<GridPoint> pts;
    for (int i = 1; i <= k; ++i)
        for (int j = -k; j <= k; ++j) pts.push_back({Rational(i, k + 1) - 1, Rational(j, 3)});
    return pts;
}

void BM_census_serial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(enumerate_preperiodic_serial(Rational(3), Rational(0), PlaceSet({2, 3}), st.range(0)));
}

void BM_census_parallel(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(enumerate_preperiodic(Rational(3), Rational(0), PlaceSet({2, 3}), st.range(0)));
}

void BM_height_grid_serial(benchmark::State& st) {
    auto pts = grid(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(canonical_height_grid_serial(pts, 1e-12));
}

void BM_height_grid_parallel(benchmark::State& st) {
    auto pts = grid(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(canonical_height_grid(pts, 1e-12));
}

void BM_nonarch_serial(benchmark::State& st) {
    std::vector<std::uint64_t> ps{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    for (auto _ : st) benchmark::DoNotOptimize(nonarch_deltas_serial(Rational(1), ps));
}

void BM_nonarch_parallel(benchmark::State& st) {
    std::vector<std::uint64_t> ps{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    for (auto _ : st) benchmark::DoNotOptimize(nonarch_deltas(Rational(1), ps));
}

}  // namespace

BENCHMARK(BM_census_serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_census_parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_height_grid_serial)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_height_grid_parallel)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_nonarch_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nonarch_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
