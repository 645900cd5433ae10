#include "nevlab/brownian.hpp"
#include "nevlab/catalog.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/zeros.hpp"

#include <benchmark/benchmark.h>

using namespace nevlab;

namespace {

const SurfaceModel& plane() {
    static SurfaceModel s = make_euclidean_plane();
    return s;
}

const MeromorphicMap& cubic() {
    static MeromorphicMap f = build_function("cubic-roots", plane());
    return f;
}

const MeromorphicMap& exp_map() {
    static MeromorphicMap f = build_function("exp", plane());
    return f;
}

} // namespace

static void BM_SphericalDistance(benchmark::State& state) {
    const SpherePoint p(Complex{0.3, 0.7}, Complex{1.0, -0.2});
    const SpherePoint q(Complex{-0.4, 0.1}, Complex{0.8, 0.9});
    for (auto _ : state) benchmark::DoNotOptimize(spherical_distance(p, q));
}
BENCHMARK(BM_SphericalDistance);

static void BM_PullbackDensity(benchmark::State& state) {
    const Complex w{3.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(fs_pullback_density(exp_map(), w));
}
BENCHMARK(BM_PullbackDensity);

static void BM_CountZeros(benchmark::State& state) {
    const SpherePoint zero = SpherePoint::zero();
    for (auto _ : state)
        benchmark::DoNotOptimize(count_zeros(cubic(), zero, static_cast<double>(state.range(0))));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountZeros)->Arg(2)->Arg(8)->Arg(32)->Complexity();

static void BM_LocateZeros(benchmark::State& state) {
    const SpherePoint zero = SpherePoint::zero();
    for (auto _ : state)
        benchmark::DoNotOptimize(locate_zeros(cubic(), zero, 2.0, 1e-6));
}
BENCHMARK(BM_LocateZeros);

static void BM_Proximity(benchmark::State& state) {
    const SpherePoint inf = SpherePoint::infinity();
    for (auto _ : state)
        benchmark::DoNotOptimize(proximity(exp_map(), inf, static_cast<double>(state.range(0)), 1e-8));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Proximity)->Arg(5)->Arg(20)->Arg(40)->Complexity();

static void BM_CharacteristicAhlfors(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            characteristic_ahlfors(exp_map(), 1.0, static_cast<double>(state.range(0)), 1e-8));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CharacteristicAhlfors)->Arg(5)->Arg(20)->Arg(40)->Complexity();

static void BM_BrownianExits(benchmark::State& state) {
    BmConfig cfg;
    cfg.surface = &plane();
    cfg.n_paths = state.range(0);
    cfg.step = 4e-5;
    cfg.seed = 99;
    cfg.r_exit = 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(sample_exits(cfg));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BrownianExits)->Arg(100)->Arg(400)->Complexity();

BENCHMARK_MAIN();
