#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace terramesh {

/// Regular elevation grid. Row 0 is the northernmost row; (xllcorner,
/// yllcorner) is the outer lower-left corner of the lower-left cell.
struct HeightField {
  std::size_t ncols = 0;
  std::size_t nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;
  double nodata = -9999.0;
  std::vector<double> values;

  double at(std::size_t row, std::size_t col) const { return values[row * ncols + col]; }
  bool is_nodata(std::size_t row, std::size_t col) const { return at(row, col) == nodata; }

  friend bool operator==(const HeightField&, const HeightField&) = default;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

struct TextureImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;  // row-major, row 0 at the top

  friend bool operator==(const TextureImage&, const TextureImage&) = default;
};

/// Parses an ESRI ASCII grid. Header keys are case-insensitive and may come
/// in any order; NODATA_value defaults to -9999. Throws terramesh::Error.
HeightField read_esri_ascii_grid(std::string_view text);

/// Shortest round-trip number formatting, so reading back reproduces the grid.
std::string write_esri_ascii_grid(const HeightField& grid);

/// Binary P6 with maxval 255 only.
TextureImage read_ppm(std::string_view bytes);
std::string write_ppm(const TextureImage& image);

}  // namespace terramesh
