#include "terramesh/raster.hpp"

#include <array>
#include <limits>
#include <optional>

#include "terramesh/error.hpp"
#include "text_util.hpp"

namespace terramesh {

namespace {

using detail::quote_token;

bool starts_like_key(std::string_view token) {
  if (token.empty()) return false;
  const char c = token.front();
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

std::size_t parse_dimension(std::string_view key, std::string_view token, std::size_t line) {
  const auto value = detail::parse_integer(token);
  if (!value) {
    throw Error(Errc::NonNumericValue, std::string(key) + " value " + quote_token(token), line);
  }
  if (*value <= 0) {
    throw Error(Errc::InvalidHeaderValue, std::string(key) + " must be positive, got " + quote_token(token),
                line);
  }
  return static_cast<std::size_t>(*value);
}

}  // namespace

HeightField read_esri_ascii_grid(std::string_view text) {
  enum Key { kNcols, kNrows, kXll, kYll, kCellsize, kNodata, kKeyCount };
  static constexpr std::array<std::string_view, kKeyCount> kNames = {
      "ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value"};

  detail::WordScanner scanner(text);
  std::array<std::optional<std::string_view>, kKeyCount> raw;
  std::array<std::size_t, kKeyCount> lines{};

  while (starts_like_key(scanner.peek())) {
    const std::string_view key_token = scanner.next();
    const std::size_t line = scanner.line();
    const std::string key = detail::lowercase(key_token);
    if (key == "xllcenter" || key == "yllcenter") {
      throw Error(Errc::UnsupportedHeaderKey,
                  quote_token(key_token) + ": cell-center origins are not supported, use xllcorner/yllcorner",
                  line);
    }
    std::size_t index = kKeyCount;
    for (std::size_t k = 0; k < kKeyCount; ++k) {
      if (key == kNames[k]) index = k;
    }
    if (index == kKeyCount) throw Error(Errc::UnsupportedHeaderKey, quote_token(key_token), line);
    if (raw[index]) throw Error(Errc::InvalidHeaderValue, "duplicate key " + quote_token(key_token), line);
    const std::string_view value = scanner.next();
    if (value.empty()) throw Error(Errc::NonNumericValue, "missing value for " + key, line);
    raw[index] = value;
    lines[index] = scanner.line();
  }

  for (std::size_t k = 0; k < kKeyCount; ++k) {
    if (k != kNodata && !raw[k]) throw Error(Errc::MissingHeaderKey, std::string(kNames[k]), scanner.current_line());
  }

  auto real = [&](Key k) {
    const auto v = detail::parse_double(*raw[k]);
    if (!v) throw Error(Errc::NonNumericValue, std::string(kNames[k]) + " value " + quote_token(*raw[k]), lines[k]);
    return *v;
  };

  HeightField grid;
  grid.ncols = parse_dimension(kNames[kNcols], *raw[kNcols], lines[kNcols]);
  grid.nrows = parse_dimension(kNames[kNrows], *raw[kNrows], lines[kNrows]);
  grid.xllcorner = real(kXll);
  grid.yllcorner = real(kYll);
  grid.cellsize = real(kCellsize);
  if (grid.cellsize <= 0.0) {
    throw Error(Errc::InvalidHeaderValue, "cellsize must be positive", lines[kCellsize]);
  }
  if (raw[kNodata]) grid.nodata = real(kNodata);

  if (grid.ncols > std::numeric_limits<std::size_t>::max() / grid.nrows) {
    throw Error(Errc::InvalidHeaderValue, "ncols * nrows overflows", lines[kNrows]);
  }
  const std::size_t expected = grid.ncols * grid.nrows;

  for (std::string_view token = scanner.next(); !token.empty(); token = scanner.next()) {
    if (grid.values.size() == expected) {
      throw Error(Errc::CellCountMismatch,
                  "more than " + std::to_string(expected) + " values, extra token " + quote_token(token),
                  scanner.line());
    }
    const auto v = detail::parse_double(token);
    if (!v) throw Error(Errc::NonNumericValue, quote_token(token), scanner.line());
    grid.values.push_back(*v);
  }
  if (grid.values.size() != expected) {
    throw Error(Errc::CellCountMismatch,
                "expected " + std::to_string(expected) + " values, found " + std::to_string(grid.values.size()),
                scanner.current_line());
  }
  return grid;
}

std::string write_esri_ascii_grid(const HeightField& grid) {
  std::string out;
  out += "ncols ";
  detail::append_uint(out, grid.ncols);
  out += "\nnrows ";
  detail::append_uint(out, grid.nrows);
  out += "\nxllcorner ";
  detail::append_shortest(out, grid.xllcorner);
  out += "\nyllcorner ";
  detail::append_shortest(out, grid.yllcorner);
  out += "\ncellsize ";
  detail::append_shortest(out, grid.cellsize);
  out += "\nNODATA_value ";
  detail::append_shortest(out, grid.nodata);
  out += '\n';
  for (std::size_t r = 0; r < grid.nrows; ++r) {
    for (std::size_t c = 0; c < grid.ncols; ++c) {
      if (c != 0) out += ' ';
      detail::append_shortest(out, grid.at(r, c));
    }
    out += '\n';
  }
  return out;
}

namespace {

class PpmHeaderReader {
 public:
  explicit PpmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comments, then reads an unsigned decimal.
  std::size_t number(const char* what) {
    for (;;) {
      while (pos_ < bytes_.size() && detail::is_space(bytes_[pos_])) ++pos_;
      if (pos_ < bytes_.size() && bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
        continue;
      }
      break;
    }
    const std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      if (value > (std::numeric_limits<std::size_t>::max() - 9) / 10) {
        throw Error(Errc::BadHeader, std::string(what) + " too large");
      }
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) throw Error(Errc::BadHeader, std::string("expected ") + what);
    return value;
  }

  // Exactly one whitespace byte separates the header from the raster.
  void end_of_header() {
    if (pos_ >= bytes_.size() || !detail::is_space(bytes_[pos_])) {
      throw Error(Errc::BadHeader, "missing whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 2;
};

}  // namespace

TextureImage read_ppm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '6') {
    throw Error(Errc::BadMagic, "expected binary PPM magic 'P6'");
  }
  PpmHeaderReader header(bytes);
  TextureImage image;
  image.width = header.number("width");
  image.height = header.number("height");
  const std::size_t maxval = header.number("maxval");
  if (image.width == 0 || image.height == 0) throw Error(Errc::BadHeader, "zero image dimension");
  if (maxval != 255) throw Error(Errc::UnsupportedMaxval, "maxval " + std::to_string(maxval) + ", only 255 supported");
  header.end_of_header();

  if (image.width > std::numeric_limits<std::size_t>::max() / 3 / image.height) {
    throw Error(Errc::BadHeader, "image dimensions overflow");
  }
  const std::size_t needed = image.width * image.height * 3;
  const std::size_t available = bytes.size() - header.position();
  if (available < needed) {
    throw Error(Errc::TruncatedPixelData,
                "expected " + std::to_string(needed) + " pixel bytes, found " + std::to_string(available));
  }
  image.pixels.resize(image.width * image.height);
  const char* p = bytes.data() + header.position();
  for (Rgb& px : image.pixels) {
    px = {static_cast<std::uint8_t>(p[0]), static_cast<std::uint8_t>(p[1]), static_cast<std::uint8_t>(p[2])};
    p += 3;
  }
  return image;
}

std::string write_ppm(const TextureImage& image) {
  std::string out = "P6\n";
  detail::append_uint(out, image.width);
  out += ' ';
  detail::append_uint(out, image.height);
  out += "\n255\n";
  out.reserve(out.size() + image.pixels.size() * 3);
  for (const Rgb& px : image.pixels) {
    out += static_cast<char>(px.r);
    out += static_cast<char>(px.g);
    out += static_cast<char>(px.b);
  }
  return out;
}

}  // namespace terramesh
