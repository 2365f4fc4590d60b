#include "terramesh/mesh_io.hpp"

#include <fstream>
#include <iterator>
#include <system_error>

#include "terramesh/error.hpp"
#include "terramesh/formats.hpp"
#include "text_util.hpp"

namespace terramesh {

namespace fs = std::filesystem;

std::optional<MeshFormat> mesh_format_for(const fs::path& path) {
  const std::string ext = detail::lowercase(path.extension().string());
  if (ext == ".wrl") return MeshFormat::Vrml;
  if (ext == ".obj") return MeshFormat::Obj;
  return std::nullopt;
}

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Error(Errc::Io, "cannot open " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::Io, "read failed for " + path.string());
  return bytes;
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

namespace {

MeshFormat require_format(const fs::path& path) {
  const auto format = mesh_format_for(path);
  if (!format) throw Error(Errc::UnknownFormat, "unsupported mesh extension '" + path.extension().string() + "'");
  return *format;
}

}  // namespace

TriMesh load_mesh(const fs::path& path) {
  const MeshFormat format = require_format(path);
  const std::string text = read_file(path);
  if (format == MeshFormat::Vrml) return read_vrml(text);

  TriMesh mesh = read_obj(text);
  if (const auto mtllib = obj_mtllib(text)) {
    const fs::path mtl_path = path.parent_path() / *mtllib;
    std::error_code ec;
    if (fs::is_regular_file(mtl_path, ec)) mesh.texture_name = mtl_texture(read_file(mtl_path));
  }
  return mesh;
}

std::string serialize_mesh(const TriMesh& mesh, MeshFormat format, std::string_view mtl_filename) {
  if (format == MeshFormat::Vrml) return write_vrml(mesh);
  return write_obj(mesh, mtl_filename).obj;
}

std::uint64_t save_mesh(const fs::path& path, const TriMesh& mesh) {
  const MeshFormat format = require_format(path);
  if (format == MeshFormat::Vrml) {
    const std::string bytes = write_vrml(mesh);
    write_file(path, bytes);
    return bytes.size();
  }
  fs::path mtl_path = path;
  mtl_path.replace_extension(".mtl");
  const ObjOutput out = write_obj(mesh, mtl_path.filename().string());
  write_file(path, out.obj);
  if (out.mtl) write_file(mtl_path, *out.mtl);
  return out.obj.size();
}

HeightField load_heightfield(const fs::path& path) { return read_esri_ascii_grid(read_file(path)); }

TextureImage load_texture(const fs::path& path) { return read_ppm(read_file(path)); }

}  // namespace terramesh
