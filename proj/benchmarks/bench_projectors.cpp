#include <numbers>

#include <benchmark/benchmark.h>

#include "pdtomo/fanbeam.hpp"
#include "pdtomo/joseph.hpp"
#include "pdtomo/phantoms.hpp"
#include "pdtomo/radon.hpp"

using namespace pdtomo;
using std::numbers::pi;

namespace {

void BM_RadonForward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ImageGrid grid = ImageGrid::square(n, 2.0);
    const DetectorGrid det(n, 2.0);
    const AngleSet angles = AngleSet::full_uniform(n / 4, pi);
    const Image f = rasterize_disc(grid, 0.6);
    for (auto _ : state)
        benchmark::DoNotOptimize(radon_forward(f, det, angles));
    state.SetItemsProcessed(state.iterations() * grid.size() * angles.count());
}

void BM_RadonBackproject(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ImageGrid grid = ImageGrid::square(n, 2.0);
    const DetectorGrid det(n, 2.0);
    const AngleSet angles = AngleSet::full_uniform(n / 4, pi);
    const Sinogram g =
        radon_forward(rasterize_disc(grid, 0.6), det, angles);
    for (auto _ : state)
        benchmark::DoNotOptimize(radon_backproject(g, grid));
    state.SetItemsProcessed(state.iterations() * grid.size() * angles.count());
}

void BM_FanForward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ImageGrid grid = ImageGrid::square(n, 2.0);
    const FanGeometry geo(3.0, 5.0, n);
    const AngleSet angles = AngleSet::full_uniform(n / 4, 2 * pi);
    const Image f = rasterize_disc(grid, 0.6);
    for (auto _ : state)
        benchmark::DoNotOptimize(fan_forward(f, geo, angles));
    state.SetItemsProcessed(state.iterations() * grid.size() * angles.count());
}

void BM_FanBackproject(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ImageGrid grid = ImageGrid::square(n, 2.0);
    const FanGeometry geo(3.0, 5.0, n);
    const AngleSet angles = AngleSet::full_uniform(n / 4, 2 * pi);
    const Sinogram g =
        fan_forward(rasterize_disc(grid, 0.6), geo, angles);
    for (auto _ : state)
        benchmark::DoNotOptimize(fan_backproject(g, geo, grid));
    state.SetItemsProcessed(state.iterations() * grid.size() * angles.count());
}

void BM_JosephForward(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ImageGrid grid = ImageGrid::square(n, 2.0);
    const DetectorGrid det(n, 2.0);
    const AngleSet angles = AngleSet::full_uniform(n / 4, pi);
    const Image f = rasterize_disc(grid, 0.6);
    for (auto _ : state)
        benchmark::DoNotOptimize(joseph_forward(f, det, angles));
    state.SetItemsProcessed(state.iterations() * grid.size() * angles.count());
}

}  // namespace

BENCHMARK(BM_RadonForward)->Arg(128)->Arg(256)->Arg(512)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RadonBackproject)->Arg(128)->Arg(256)->Arg(512)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FanForward)->Arg(128)->Arg(256)->Arg(512)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FanBackproject)->Arg(128)->Arg(256)->Arg(512)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JosephForward)->Arg(128)->Arg(256)->Arg(512)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
