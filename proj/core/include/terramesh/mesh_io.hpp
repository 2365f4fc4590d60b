#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "terramesh/mesh.hpp"
#include "terramesh/raster.hpp"

namespace terramesh {

enum class MeshFormat { Vrml, Obj };

/// Dispatch is by extension only: ".wrl" or ".obj" (case-insensitive).
std::optional<MeshFormat> mesh_format_for(const std::filesystem::path& path);

/// Throws Error(Io) when the file cannot be read or written.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Loads a .wrl or .obj mesh. For OBJ the texture name is taken from the
/// referenced MTL file when it exists next to the OBJ.
TriMesh load_mesh(const std::filesystem::path& path);

/// Writes a .wrl or .obj mesh (plus a sibling .mtl for textured OBJ) and
/// returns the size in bytes of the mesh file itself.
std::uint64_t save_mesh(const std::filesystem::path& path, const TriMesh& mesh);

/// Serialized bytes of `mesh` in `format`, without touching the filesystem.
/// For OBJ only the .obj document is returned.
std::string serialize_mesh(const TriMesh& mesh, MeshFormat format, std::string_view mtl_filename = "mesh.mtl");

HeightField load_heightfield(const std::filesystem::path& path);
TextureImage load_texture(const std::filesystem::path& path);

}  // namespace terramesh
