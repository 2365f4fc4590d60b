#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "terramesh/mesh.hpp"
#include "terramesh/raster.hpp"

namespace terramesh {

enum class DiagonalRule {
  FixedNwSe,  // every cell split along its north-west / south-east diagonal
  Shortest,   // the 3D-shorter diagonal; ties go to north-west / south-east
};

struct TerrainOptions {
  double z_scale = 1.0;
  DiagonalRule diagonal = DiagonalRule::FixedNwSe;
  std::optional<std::string> texture_name;
};

/// Builds the draped terrain sheet: one vertex per valid grid node in
/// row-major order, two counter-clockwise (seen from +z) triangles per cell
/// whose four corners are all valid. Cells touching nodata become holes.
///
/// Node (row, col) sits at (xllcorner + col * cellsize,
/// yllcorner + (nrows - 1 - row) * cellsize, z_scale * value) with texture
/// coordinate (col / (ncols - 1), row / (nrows - 1)).
///
/// Throws DegenerateGrid for grids narrower than 2x2 and InvalidParams for a
/// non-positive z_scale.
TriMesh generate_terrain_mesh(const HeightField& grid, const TerrainOptions& options = {});

struct DrapeReport {
  std::vector<VertexId> out_of_range;  // vertices whose UV leaves [0,1]^2
  bool clean() const noexcept { return out_of_range.empty(); }
};

/// Checks that every texture coordinate samples inside the image. Throws
/// MissingUVs for an untextured mesh.
DrapeReport drape_check(const TriMesh& mesh, const TextureImage& texture);

/// Diamond-square fractal terrain on a (2^order + 1)-square grid. `relief` is
/// the initial displacement amplitude in metres; `roughness` in (0,1) scales
/// it per octave. Deterministic for a given seed on every platform.
HeightField make_fractal_heightfield(unsigned order, double cellsize, double relief, double roughness,
                                     std::uint64_t seed);

/// Smooth colour ramp used as a stand-in texture for synthetic terrain.
TextureImage make_gradient_texture(std::size_t width, std::size_t height);

}  // namespace terramesh
