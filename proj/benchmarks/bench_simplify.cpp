#include <benchmark/benchmark.h>

#include "terramesh/quadric.hpp"
#include "terramesh/simplify.hpp"
#include "terramesh/terrain.hpp"

namespace {

terramesh::TriMesh fractal_terrain(unsigned order) {
  return terramesh::generate_terrain_mesh(terramesh::make_fractal_heightfield(order, 10.0, 300.0, 0.55, 42));
}

void BM_Simplify(benchmark::State& state) {
  const terramesh::TriMesh mesh = fractal_terrain(static_cast<unsigned>(state.range(0)));
  terramesh::SimplifyParams params;
  params.target_ratio = 0.05;
  for (auto _ : state) {
    auto result = terramesh::simplify(mesh, params);
    benchmark::DoNotOptimize(result.mesh.faces.data());
  }
  state.counters["faces"] = static_cast<double>(mesh.faces.size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mesh.faces.size()));
}
BENCHMARK(BM_Simplify)->DenseRange(5, 8)->Unit(benchmark::kMillisecond);

void BM_VertexQuadrics(benchmark::State& state) {
  const terramesh::TriMesh mesh = fractal_terrain(8);
  for (auto _ : state) {
    auto quadrics = terramesh::vertex_quadrics(mesh);
    benchmark::DoNotOptimize(quadrics.data());
  }
}
BENCHMARK(BM_VertexQuadrics)->Unit(benchmark::kMillisecond);

}  // namespace
