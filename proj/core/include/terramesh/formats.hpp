#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "terramesh/mesh.hpp"

namespace terramesh {

// Text serialization of TriMesh. Writers emit "\n" line endings and numbers
// with six significant digits; readers accept "\n" and "\r\n" and throw
// terramesh::Error with a line number on malformed input.

/// Single-Shape VRML 2.0 scene with one IndexedFaceSet. The texture, when
/// named, is referenced through ImageTexture.url and never embedded.
std::string write_vrml(const TriMesh& mesh);

/// Extracts the first IndexedFaceSet (and the first ImageTexture url) from
/// an arbitrary node tree; everything else is skipped. Polygons are
/// fan-triangulated from their first corner.
TriMesh read_vrml(std::string_view text);

struct ObjOutput {
  std::string obj;
  std::optional<std::string> mtl;  // present when the mesh names a texture
};

/// `mtl_filename` is what the "mtllib" line refers to.
ObjOutput write_obj(const TriMesh& mesh, std::string_view mtl_filename = "mesh.mtl");

/// Parses v / vt / f records. Texture name is not resolved here; see
/// obj_mtllib() and mtl_texture().
TriMesh read_obj(std::string_view text);

/// First "mtllib" file name referenced by an OBJ document.
std::optional<std::string> obj_mtllib(std::string_view obj_text);

/// First "map_Kd" file name in an MTL document.
std::optional<std::string> mtl_texture(std::string_view mtl_text);

}  // namespace terramesh
