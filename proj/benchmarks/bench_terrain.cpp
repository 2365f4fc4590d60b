#include <benchmark/benchmark.h>

#include "terramesh/terrain.hpp"

namespace {

void BM_GenerateTerrain(benchmark::State& state) {
  const terramesh::HeightField grid =
      terramesh::make_fractal_heightfield(static_cast<unsigned>(state.range(0)), 10.0, 300.0, 0.55, 42);
  terramesh::TerrainOptions options;
  options.diagonal = state.range(1) ? terramesh::DiagonalRule::Shortest : terramesh::DiagonalRule::FixedNwSe;
  for (auto _ : state) {
    auto mesh = terramesh::generate_terrain_mesh(grid, options);
    benchmark::DoNotOptimize(mesh.faces.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.values.size()));
}
BENCHMARK(BM_GenerateTerrain)->ArgsProduct({{6, 8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_FractalHeightField(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(terramesh::make_fractal_heightfield(9, 10.0, 300.0, 0.55, 42));
  }
}
BENCHMARK(BM_FractalHeightField)->Unit(benchmark::kMillisecond);

}  // namespace
