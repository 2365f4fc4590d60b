#include <doctest.h>

#include <random>
#include <string>

#include "error_code.hpp"
#include "generators.hpp"
#include "terramesh/error.hpp"
#include "terramesh/raster.hpp"

using namespace terramesh;
using terramesh::testing::error_code_of;

namespace {

const std::string kHeader = "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 10\nNODATA_value -9999\n";

std::string ppm(std::string_view header, std::initializer_list<unsigned char> bytes) {
  std::string out(header);
  for (unsigned char b : bytes) out.push_back(static_cast<char>(b));
  return out;
}

}  // namespace

TEST_CASE("esri grid: all-zero 2x2") {
  const HeightField g = read_esri_ascii_grid(kHeader + "0 0\n0 0");
  CHECK(g.ncols == 2);
  CHECK(g.nrows == 2);
  CHECK(g.cellsize == 10.0);
  CHECK(g.nodata == -9999.0);
  CHECK(g.values == std::vector<double>{0, 0, 0, 0});
}

TEST_CASE("esri grid: first value is the north-west cell") {
  const HeightField g = read_esri_ascii_grid(kHeader + "1 2\n3 4");
  CHECK(g.at(0, 0) == 1.0);
  CHECK(g.at(0, 1) == 2.0);
  CHECK(g.at(1, 0) == 3.0);
  CHECK(g.at(1, 1) == 4.0);
}

TEST_CASE("esri grid: header keys in any order and any case") {
  const HeightField g =
      read_esri_ascii_grid("CELLSIZE 2.5\nYllCorner -4\nnrows 1\nXLLCORNER 100\nNCOLS 3\n7 8 9\n");
  CHECK(g.ncols == 3);
  CHECK(g.nrows == 1);
  CHECK(g.xllcorner == 100.0);
  CHECK(g.yllcorner == -4.0);
  CHECK(g.cellsize == 2.5);
  CHECK(g.nodata == -9999.0);
  CHECK(g.values == std::vector<double>{7, 8, 9});
}

TEST_CASE("esri grid: missing cellsize") {
  try {
    read_esri_ascii_grid("ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\n0 0\n0 0\n");
    FAIL("expected MissingHeaderKey");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingHeaderKey);
    CHECK(e.detail() == "cellsize");
  }
}

TEST_CASE("esri grid: errors name the token and line") {
  try {
    read_esri_ascii_grid(kHeader + "0 0\n0 abc\n");
    FAIL("expected NonNumericValue");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonNumericValue);
    CHECK(e.line() == 8);
    CHECK(std::string(e.what()).find("abc") != std::string::npos);
  }
  CHECK(error_code_of([] { read_esri_ascii_grid(kHeader + "0 0 0"); }) == Errc::CellCountMismatch);
  CHECK(error_code_of([] { read_esri_ascii_grid(kHeader + "0 0 0 0 0"); }) == Errc::CellCountMismatch);
  CHECK(error_code_of([] { read_esri_ascii_grid("ncols 2\nnrows 2\nxllcenter 0\nyllcorner 0\ncellsize 1\n0 0 0 0"); }) ==
        Errc::UnsupportedHeaderKey);
  CHECK(error_code_of([] { read_esri_ascii_grid("ncols x\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n0 0 0 0"); }) ==
        Errc::NonNumericValue);
  CHECK(error_code_of([] { read_esri_ascii_grid("ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize -1\n0 0 0 0"); }) ==
        Errc::InvalidHeaderValue);
  CHECK(error_code_of([] { read_esri_ascii_grid(kHeader + "0 nan 0 0"); }) == Errc::NonNumericValue);
}

TEST_CASE("esri grid: CRLF line endings") {
  const HeightField g = read_esri_ascii_grid(
      "ncols 2\r\nnrows 1\r\nxllcorner 0\r\nyllcorner 0\r\ncellsize 1\r\n1.5 -2\r\n");
  CHECK(g.values == std::vector<double>{1.5, -2});
}

TEST_CASE("esri grid: data layout does not matter") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    HeightField g = testing::constant_field(1 + rng() % 6, 1 + rng() % 6, 10.0, 0.0);
    for (double& v : g.values) v = testing::uniform(rng, -500, 3000);
    const std::string canonical = write_esri_ascii_grid(g);
    CHECK(read_esri_ascii_grid(canonical) == g);

    // Same numbers, random whitespace runs and line breaks between them.
    const std::size_t data_start = canonical.find("\n", canonical.find("NODATA_value")) + 1;
    std::string reformatted = canonical.substr(0, data_start);
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      reformatted += token;
      const std::size_t gap = 1 + rng() % 4;
      for (std::size_t i = 0; i < gap; ++i) reformatted += " \t\n"[rng() % 3];
      token.clear();
    };
    for (std::size_t i = data_start; i < canonical.size(); ++i) {
      const char c = canonical[i];
      if (c == ' ' || c == '\n') {
        flush();
      } else {
        token += c;
      }
    }
    flush();
    CHECK(read_esri_ascii_grid(reformatted) == g);
  }
}

TEST_CASE("ppm: 1x1 red") {
  const TextureImage img = read_ppm(ppm("P6\n1 1\n255\n", {255, 0, 0}));
  CHECK(img.width == 1);
  CHECK(img.height == 1);
  REQUIRE(img.pixels.size() == 1);
  CHECK(img.pixels[0] == Rgb{255, 0, 0});
  CHECK(write_ppm(img) == ppm("P6\n1 1\n255\n", {255, 0, 0}));
}

TEST_CASE("ppm: comments in the header") {
  const TextureImage img = read_ppm(ppm("P6 # magic\n# size next\n1 # width\n1\n255\n", {1, 2, 3}));
  CHECK(img.pixels[0] == Rgb{1, 2, 3});
}

TEST_CASE("ppm: errors") {
  CHECK(error_code_of([] { read_ppm("P3\n1 1\n255\n255 0 0\n"); }) == Errc::BadMagic);
  CHECK(error_code_of([] { read_ppm(""); }) == Errc::BadMagic);
  // 2 * 1 pixels * 3 channels = 6 bytes expected, 5 supplied.
  CHECK(error_code_of([] { read_ppm(ppm("P6\n2 1\n255\n", {1, 2, 3, 4, 5})); }) == Errc::TruncatedPixelData);
  CHECK(error_code_of([] { read_ppm(ppm("P6\n1 1\n65535\n", {0, 0, 0, 0, 0, 0})); }) == Errc::UnsupportedMaxval);
  CHECK(error_code_of([] { read_ppm(ppm("P6\n1 1\n15\n", {0, 0, 0})); }) == Errc::UnsupportedMaxval);
  CHECK(error_code_of([] { read_ppm("P6\n1\n"); }).has_value());
}

TEST_CASE("ppm: 2x2 gradient byte layout") {
  TextureImage img;
  img.width = 2;
  img.height = 2;
  img.pixels = {{0, 0, 0}, {85, 0, 0}, {170, 0, 0}, {255, 0, 0}};
  const std::string bytes = write_ppm(img);
  const std::string header = "P6\n2 2\n255\n";
  REQUIRE(bytes.size() == header.size() + 12);
  CHECK(bytes.substr(0, header.size()) == header);
  const unsigned char expected[12] = {0, 0, 0, 85, 0, 0, 170, 0, 0, 255, 0, 0};
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(static_cast<unsigned char>(bytes[header.size() + i]) == expected[i]);
  }
}

TEST_CASE("ppm: write then read is the identity") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    TextureImage img;
    img.width = 1 + rng() % 9;
    img.height = 1 + rng() % 9;
    for (std::size_t i = 0; i < img.width * img.height; ++i) {
      img.pixels.push_back({static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng()),
                            static_cast<std::uint8_t>(rng())});
    }
    CHECK(read_ppm(write_ppm(img)) == img);
  }
}
