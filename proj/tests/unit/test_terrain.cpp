#include <doctest.h>

#include <random>

#include "error_code.hpp"
#include "generators.hpp"
#include "terramesh/error.hpp"
#include "terramesh/mesh.hpp"
#include "terramesh/terrain.hpp"

using namespace terramesh;
using terramesh::testing::constant_field;
using terramesh::testing::error_code_of;

namespace {

HeightField random_field(std::mt19937_64& rng, double nodata_fraction) {
  HeightField g = constant_field(2 + rng() % 7, 2 + rng() % 7, testing::uniform(rng, 0.5, 30), 0.0);
  g.xllcorner = testing::uniform(rng, -1000, 1000);
  g.yllcorner = testing::uniform(rng, -1000, 1000);
  for (double& v : g.values) {
    v = testing::uniform(rng, 0, 1) < nodata_fraction ? g.nodata : testing::uniform(rng, -50, 400);
  }
  return g;
}

std::size_t full_cells(const HeightField& g) {
  std::size_t n = 0;
  for (std::size_t r = 0; r + 1 < g.nrows; ++r) {
    for (std::size_t c = 0; c + 1 < g.ncols; ++c) {
      if (!g.is_nodata(r, c) && !g.is_nodata(r, c + 1) && !g.is_nodata(r + 1, c) && !g.is_nodata(r + 1, c + 1)) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("2x2 zero field") {
  const TriMesh m = generate_terrain_mesh(constant_field(2, 2, 10.0, 0.0));
  CHECK(m.positions.size() == 4);
  CHECK(m.faces.size() == 2);
  for (const Vec3& p : m.positions) CHECK(p.z == 0.0);
  CHECK(m.uvs == std::vector<UV>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  // Row 0 is north: the first vertex sits at the largest y.
  CHECK(m.positions[0] == Vec3{0, 10, 0});
  CHECK(m.positions[3] == Vec3{10, 0, 0});
}

TEST_CASE("counts for n x m grids") {
  for (std::size_t n : {2, 3, 5}) {
    for (std::size_t m : {2, 3, 5}) {
      const TriMesh mesh = generate_terrain_mesh(constant_field(n, m, 1.0, 3.0));
      CHECK(mesh.positions.size() == n * m);
      CHECK(mesh.faces.size() == (n - 1) * (m - 1) * 2);
    }
  }
}

TEST_CASE("one nodata corner suppresses the only cell") {
  HeightField g = constant_field(2, 2, 10.0, 0.0);
  g.values[3] = g.nodata;
  const TriMesh m = generate_terrain_mesh(g);
  CHECK(m.positions.size() == 3);
  CHECK(m.faces.empty());
}

TEST_CASE("parameter errors") {
  CHECK(error_code_of([] { generate_terrain_mesh(constant_field(1, 5, 1.0, 0.0)); }) == Errc::DegenerateGrid);
  CHECK(error_code_of([] { generate_terrain_mesh(constant_field(5, 1, 1.0, 0.0)); }) == Errc::DegenerateGrid);
  TerrainOptions opts;
  opts.z_scale = 0.0;
  CHECK(error_code_of([&] { generate_terrain_mesh(constant_field(2, 2, 1.0, 0.0), opts); }) == Errc::InvalidParams);
}

TEST_CASE("faces wind counter-clockwise seen from above") {
  std::mt19937_64 rng(1);
  for (DiagonalRule rule : {DiagonalRule::FixedNwSe, DiagonalRule::Shortest}) {
    for (int trial = 0; trial < 30; ++trial) {
      TerrainOptions opts;
      opts.diagonal = rule;
      const TriMesh m = generate_terrain_mesh(random_field(rng, 0.0), opts);
      for (const Face& f : m.faces) {
        const Vec3& a = m.positions[f[0]];
        const Vec3& b = m.positions[f[1]];
        const Vec3& c = m.positions[f[2]];
        CHECK((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) > 0.0);
      }
    }
  }
}

TEST_CASE("shortest diagonal rule") {
  // NW up and SE down makes the NW-SE diagonal the longer one.
  HeightField g = constant_field(2, 2, 1.0, 0.0);
  g.values = {5, 0, 0, -5};
  TerrainOptions opts;
  opts.diagonal = DiagonalRule::Shortest;
  const TriMesh m = generate_terrain_mesh(g, opts);
  for (const Face& f : m.faces) {
    const bool has_nw = f[0] == 0 || f[1] == 0 || f[2] == 0;
    const bool has_se = f[0] == 3 || f[1] == 3 || f[2] == 3;
    CHECK_FALSE((has_nw && has_se));
  }
  // Ties go to NW-SE, identical to the fixed rule.
  const HeightField flat = constant_field(4, 3, 2.0, 1.0);
  CHECK(generate_terrain_mesh(flat, opts).faces == generate_terrain_mesh(flat).faces);
}

TEST_CASE("terrain output invariants under random nodata") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const HeightField g = random_field(rng, trial % 2 == 0 ? 0.0 : 0.2);
    TerrainOptions opts;
    opts.z_scale = testing::uniform(rng, 0.5, 3.0);
    opts.diagonal = trial % 3 == 0 ? DiagonalRule::Shortest : DiagonalRule::FixedNwSe;
    const TriMesh m = generate_terrain_mesh(g, opts);

    const ValidationReport report = validate(m);
    CHECK(report.clean());
    CHECK(report.non_manifold_edges.empty());
    CHECK(m.faces.size() == 2 * full_cells(g));

    // z is exactly z_scale * value, in row-major node order.
    std::size_t v = 0;
    for (std::size_t r = 0; r < g.nrows; ++r) {
      for (std::size_t c = 0; c < g.ncols; ++c) {
        if (g.is_nodata(r, c)) continue;
        CHECK(m.positions[v].z == opts.z_scale * g.at(r, c));
        ++v;
      }
    }
    CHECK(v == m.positions.size());

    if (full_cells(g) == (g.ncols - 1) * (g.nrows - 1)) {
      CHECK(boundary_edges(m).size() == 2 * (g.ncols - 1) + 2 * (g.nrows - 1));
    }
  }
}

TEST_CASE("drape_check") {
  TextureImage tex = make_gradient_texture(4, 4);
  std::mt19937_64 rng(5);
  CHECK(drape_check(generate_terrain_mesh(random_field(rng, 0.1)), tex).clean());

  TriMesh m;
  m.positions = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  m.uvs = {{0, 0}, {1.5, 0}, {0, 1}};
  m.faces = {{0, 1, 2}};
  CHECK(drape_check(m, tex).out_of_range == std::vector<VertexId>{1});

  m.uvs.clear();
  CHECK(error_code_of([&] { drape_check(m, tex); }) == Errc::MissingUVs);
}

TEST_CASE("fractal height field is deterministic") {
  const HeightField a = make_fractal_heightfield(4, 10.0, 300.0, 0.55, 42);
  const HeightField b = make_fractal_heightfield(4, 10.0, 300.0, 0.55, 42);
  const HeightField c = make_fractal_heightfield(4, 10.0, 300.0, 0.55, 43);
  CHECK(a.ncols == 17);
  CHECK(a.nrows == 17);
  CHECK(a == b);
  CHECK_FALSE(a == c);
}
