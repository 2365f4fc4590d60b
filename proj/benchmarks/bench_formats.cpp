#include <benchmark/benchmark.h>

#include <string>

#include "terramesh/formats.hpp"
#include "terramesh/raster.hpp"
#include "terramesh/terrain.hpp"

namespace {

const terramesh::TriMesh& terrain() {
  static const terramesh::TriMesh mesh =
      terramesh::generate_terrain_mesh(terramesh::make_fractal_heightfield(7, 10.0, 300.0, 0.55, 42));
  return mesh;
}

void BM_WriteVrml(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(terramesh::write_vrml(terrain()));
}
BENCHMARK(BM_WriteVrml)->Unit(benchmark::kMillisecond);

void BM_ReadVrml(benchmark::State& state) {
  const std::string text = terramesh::write_vrml(terrain());
  for (auto _ : state) benchmark::DoNotOptimize(terramesh::read_vrml(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ReadVrml)->Unit(benchmark::kMillisecond);

void BM_WriteObj(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(terramesh::write_obj(terrain()));
}
BENCHMARK(BM_WriteObj)->Unit(benchmark::kMillisecond);

void BM_ReadObj(benchmark::State& state) {
  const std::string text = terramesh::write_obj(terrain()).obj;
  for (auto _ : state) benchmark::DoNotOptimize(terramesh::read_obj(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ReadObj)->Unit(benchmark::kMillisecond);

void BM_ReadEsriGrid(benchmark::State& state) {
  const std::string text =
      terramesh::write_esri_ascii_grid(terramesh::make_fractal_heightfield(8, 10.0, 300.0, 0.55, 42));
  for (auto _ : state) benchmark::DoNotOptimize(terramesh::read_esri_ascii_grid(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ReadEsriGrid)->Unit(benchmark::kMillisecond);

}  // namespace
