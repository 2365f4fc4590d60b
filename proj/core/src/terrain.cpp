#include "terramesh/terrain.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "terramesh/error.hpp"

namespace terramesh {

namespace {

constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

}  // namespace

TriMesh generate_terrain_mesh(const HeightField& grid, const TerrainOptions& options) {
  if (grid.ncols < 2 || grid.nrows < 2) {
    throw Error(Errc::DegenerateGrid, "terrain needs at least 2x2 nodes, got " + std::to_string(grid.ncols) +
                                          "x" + std::to_string(grid.nrows));
  }
  if (!(options.z_scale > 0.0) || !std::isfinite(options.z_scale)) {
    throw Error(Errc::InvalidParams, "z_scale must be positive");
  }
  if (grid.values.size() != grid.ncols * grid.nrows) {
    throw Error(Errc::CellCountMismatch, "height field value count does not match its dimensions");
  }
  if (grid.values.size() >= kNoVertex) throw Error(Errc::InvalidParams, "height field too large");

  TriMesh mesh;
  mesh.texture_name = options.texture_name;

  const double u_den = static_cast<double>(grid.ncols - 1);
  const double v_den = static_cast<double>(grid.nrows - 1);
  std::vector<VertexId> node_vertex(grid.values.size(), kNoVertex);
  for (std::size_t r = 0; r < grid.nrows; ++r) {
    const double y = grid.yllcorner + static_cast<double>(grid.nrows - 1 - r) * grid.cellsize;
    for (std::size_t c = 0; c < grid.ncols; ++c) {
      if (grid.is_nodata(r, c)) continue;
      node_vertex[r * grid.ncols + c] = static_cast<VertexId>(mesh.positions.size());
      mesh.positions.push_back(
          {grid.xllcorner + static_cast<double>(c) * grid.cellsize, y, options.z_scale * grid.at(r, c)});
      mesh.uvs.push_back({static_cast<double>(c) / u_den, static_cast<double>(r) / v_den});
    }
  }

  mesh.faces.reserve((grid.nrows - 1) * (grid.ncols - 1) * 2);
  for (std::size_t r = 0; r + 1 < grid.nrows; ++r) {
    for (std::size_t c = 0; c + 1 < grid.ncols; ++c) {
      const VertexId nw = node_vertex[r * grid.ncols + c];
      const VertexId ne = node_vertex[r * grid.ncols + c + 1];
      const VertexId sw = node_vertex[(r + 1) * grid.ncols + c];
      const VertexId se = node_vertex[(r + 1) * grid.ncols + c + 1];
      if (nw == kNoVertex || ne == kNoVertex || sw == kNoVertex || se == kNoVertex) continue;

      bool split_nw_se = true;
      if (options.diagonal == DiagonalRule::Shortest) {
        const double nw_se = squared_norm(mesh.positions[se] - mesh.positions[nw]);
        const double sw_ne = squared_norm(mesh.positions[ne] - mesh.positions[sw]);
        split_nw_se = !(sw_ne < nw_se);
      }
      if (split_nw_se) {
        mesh.faces.push_back({nw, sw, se});
        mesh.faces.push_back({nw, se, ne});
      } else {
        mesh.faces.push_back({nw, sw, ne});
        mesh.faces.push_back({sw, se, ne});
      }
    }
  }
  return mesh;
}

DrapeReport drape_check(const TriMesh& mesh, const TextureImage& texture) {
  if (!mesh.has_uvs()) throw Error(Errc::MissingUVs, "mesh has no texture coordinates to drape");
  if (texture.width == 0 || texture.height == 0) throw Error(Errc::InvalidParams, "empty texture");
  DrapeReport report;
  for (std::size_t i = 0; i < mesh.uvs.size(); ++i) {
    const UV& uv = mesh.uvs[i];
    if (!(uv.u >= 0.0 && uv.u <= 1.0 && uv.v >= 0.0 && uv.v <= 1.0)) {
      report.out_of_range.push_back(static_cast<VertexId>(i));
    }
  }
  return report;
}

HeightField make_fractal_heightfield(unsigned order, double cellsize, double relief, double roughness,
                                     std::uint64_t seed) {
  if (order == 0 || order > 14) throw Error(Errc::InvalidParams, "fractal order must be in [1, 14]");
  if (!(cellsize > 0.0)) throw Error(Errc::InvalidParams, "cellsize must be positive");

  const std::size_t n = (std::size_t{1} << order) + 1;
  HeightField grid;
  grid.ncols = n;
  grid.nrows = n;
  grid.cellsize = cellsize;
  grid.values.assign(n * n, 0.0);

  // mt19937_64 output is specified by the standard; the distribution
  // classes are not, so map raw bits to [-1, 1) by hand.
  std::mt19937_64 rng(seed);
  auto jitter = [&rng](double amplitude) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return amplitude * (2.0 * unit - 1.0);
  };
  auto at = [&](std::size_t r, std::size_t c) -> double& { return grid.values[r * n + c]; };

  at(0, 0) = jitter(relief);
  at(0, n - 1) = jitter(relief);
  at(n - 1, 0) = jitter(relief);
  at(n - 1, n - 1) = jitter(relief);

  double amplitude = relief;
  for (std::size_t step = n - 1; step > 1; step /= 2) {
    const std::size_t half = step / 2;
    amplitude *= roughness;
    for (std::size_t r = half; r < n; r += step) {
      for (std::size_t c = half; c < n; c += step) {
        const double mean = 0.25 * (at(r - half, c - half) + at(r - half, c + half) + at(r + half, c - half) +
                                    at(r + half, c + half));
        at(r, c) = mean + jitter(amplitude);
      }
    }
    for (std::size_t r = 0; r < n; r += half) {
      for (std::size_t c = (r / half) % 2 == 0 ? half : 0; c < n; c += step) {
        double sum = 0.0;
        int count = 0;
        if (r >= half) sum += at(r - half, c), ++count;
        if (r + half < n) sum += at(r + half, c), ++count;
        if (c >= half) sum += at(r, c - half), ++count;
        if (c + half < n) sum += at(r, c + half), ++count;
        at(r, c) = sum / count + jitter(amplitude);
      }
    }
  }
  return grid;
}

TextureImage make_gradient_texture(std::size_t width, std::size_t height) {
  TextureImage image;
  image.width = width;
  image.height = height;
  image.pixels.reserve(width * height);
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      const auto u = static_cast<std::uint8_t>(width > 1 ? 255 * c / (width - 1) : 0);
      const auto v = static_cast<std::uint8_t>(height > 1 ? 255 * r / (height - 1) : 0);
      image.pixels.push_back({u, v, static_cast<std::uint8_t>(255 - (u / 2 + v / 2))});
    }
  }
  return image;
}

}  // namespace terramesh
