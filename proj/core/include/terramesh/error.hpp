#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace terramesh {

enum class Errc {
  // geometry
  DegenerateFace,
  EmptyMesh,
  MissingUVs,
  DegenerateGrid,
  InvalidParams,
  // ESRI ASCII grid
  MissingHeaderKey,
  UnsupportedHeaderKey,
  InvalidHeaderValue,
  NonNumericValue,
  CellCountMismatch,
  // PPM
  BadMagic,
  UnsupportedMaxval,
  TruncatedPixelData,
  // mesh formats
  BadHeader,
  NoIndexedFaceSet,
  IndexOutOfRange,
  UnterminatedFace,
  MalformedFaceToken,
  Syntax,
  // files
  UnknownFormat,
  Io,
};

std::string_view to_string(Errc code) noexcept;

/// The single exception type thrown by the library. `line()` is 1-based, or 0
/// when the failure is not tied to a text position.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string detail, std::size_t line = 0);

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::size_t line_;
  std::string detail_;
};

}  // namespace terramesh
