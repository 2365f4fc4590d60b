#include "terramesh/error.hpp"

namespace terramesh {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DegenerateFace: return "DegenerateFace";
    case Errc::EmptyMesh: return "EmptyMesh";
    case Errc::MissingUVs: return "MissingUVs";
    case Errc::DegenerateGrid: return "DegenerateGrid";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::MissingHeaderKey: return "MissingHeaderKey";
    case Errc::UnsupportedHeaderKey: return "UnsupportedHeaderKey";
    case Errc::InvalidHeaderValue: return "InvalidHeaderValue";
    case Errc::NonNumericValue: return "NonNumericValue";
    case Errc::CellCountMismatch: return "CellCountMismatch";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedMaxval: return "UnsupportedMaxval";
    case Errc::TruncatedPixelData: return "TruncatedPixelData";
    case Errc::BadHeader: return "BadHeader";
    case Errc::NoIndexedFaceSet: return "NoIndexedFaceSet";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::UnterminatedFace: return "UnterminatedFace";
    case Errc::MalformedFaceToken: return "MalformedFaceToken";
    case Errc::Syntax: return "Syntax";
    case Errc::UnknownFormat: return "UnknownFormat";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(Errc code, const std::string& detail, std::size_t line) {
  std::string msg(to_string(code));
  if (line != 0) msg += " (line " + std::to_string(line) + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(Errc code, std::string detail, std::size_t line)
    : std::runtime_error(format_message(code, detail, line)),
      code_(code),
      line_(line),
      detail_(std::move(detail)) {}

}  // namespace terramesh
