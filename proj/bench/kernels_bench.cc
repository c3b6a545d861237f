// Serial reference kernels against their OpenMP counterparts on one plane.
// Run with OMP_NUM_THREADS=N to pick the thread count.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "qtune/freq/accumulator.hpp"
#include "qtune/kernels.hpp"
#include "qtune/table/designer.hpp"
#include "support/oracles.hpp"

namespace {

using namespace qtune;

const RasterImage& plane_image(int side) {
  static std::map<int, RasterImage> cache;
  auto it = cache.find(side);
  if (it == cache.end()) {
    std::mt19937_64 rng(static_cast<unsigned>(side));
    it = cache.emplace(side, testing::smooth_image(rng, side, side, 1)).first;
  }
  return it->second;
}

kernels::PlaneView view(int side) {
  const auto& img = plane_image(side);
  return {img.plane(0), img.width(), img.height()};
}

template <bool Parallel>
void BM_Quantize(benchmark::State& state) {
  const auto v = view(static_cast<int>(state.range(0)));
  const QuantTable t = standard_table(75, TableKind::kLuma);
  for (auto _ : state) {
    auto blocks = Parallel ? kernels::parallel::quantize_plane(v, t) : kernels::serial::quantize_plane(v, t);
    benchmark::DoNotOptimize(blocks.data());
  }
  state.SetItemsProcessed(state.iterations() * v.width * v.height);
}

template <bool Parallel>
void BM_Reconstruct(benchmark::State& state) {
  const auto v = view(static_cast<int>(state.range(0)));
  const QuantTable t = standard_table(75, TableKind::kLuma);
  const auto blocks = kernels::serial::quantize_plane(v, t);
  Plane out(static_cast<std::size_t>(v.width) * static_cast<std::size_t>(v.height));
  for (auto _ : state) {
    if (Parallel) {
      kernels::parallel::reconstruct_plane(blocks, t, v.width, v.height, out);
    } else {
      kernels::serial::reconstruct_plane(blocks, t, v.width, v.height, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * v.width * v.height);
}

template <bool Parallel>
void BM_Accumulate(benchmark::State& state) {
  const auto v = view(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    BandSet bands{};
    if (Parallel) {
      kernels::parallel::accumulate_plane(v, bands);
    } else {
      kernels::serial::accumulate_plane(v, bands);
    }
    benchmark::DoNotOptimize(bands.data());
  }
  state.SetItemsProcessed(state.iterations() * v.width * v.height);
}

}  // namespace

BENCHMARK(BM_Quantize<false>)->Name("quantize/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_Quantize<true>)->Name("quantize/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_Reconstruct<false>)->Name("reconstruct/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_Reconstruct<true>)->Name("reconstruct/parallel")->Arg(256)->Arg(1024);
BENCHMARK(BM_Accumulate<false>)->Name("accumulate/serial")->Arg(256)->Arg(1024);
BENCHMARK(BM_Accumulate<true>)->Name("accumulate/parallel")->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
