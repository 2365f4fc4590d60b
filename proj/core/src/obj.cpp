#include <cstdint>
#include <vector>

#include "terramesh/error.hpp"
#include "terramesh/formats.hpp"
#include "text_util.hpp"
#include "wedge.hpp"

namespace terramesh {

ObjOutput write_obj(const TriMesh& mesh, std::string_view mtl_filename) {
  ObjOutput out;
  std::string& obj = out.obj;
  obj.reserve(64 + mesh.positions.size() * 48 + mesh.faces.size() * 40);
  if (mesh.texture_name) {
    obj += "mtllib ";
    obj += mtl_filename;
    obj += "\nusemtl material0\n";
    out.mtl = "newmtl material0\nKa 1 1 1\nKd 1 1 1\nmap_Kd " + *mesh.texture_name + "\n";
  }
  for (const Vec3& p : mesh.positions) {
    obj += "v ";
    detail::append_g6(obj, p.x);
    obj += ' ';
    detail::append_g6(obj, p.y);
    obj += ' ';
    detail::append_g6(obj, p.z);
    obj += '\n';
  }
  for (const UV& uv : mesh.uvs) {
    obj += "vt ";
    detail::append_g6(obj, uv.u);
    obj += ' ';
    detail::append_g6(obj, uv.v);
    obj += '\n';
  }
  const bool textured = mesh.has_uvs();
  for (const Face& f : mesh.faces) {
    obj += 'f';
    for (VertexId v : f) {
      obj += ' ';
      detail::append_uint(obj, v + 1ULL);
      if (textured) {
        obj += '/';
        detail::append_uint(obj, v + 1ULL);
      }
    }
    obj += '\n';
  }
  return out;
}

namespace {

// Splits a line into whitespace-separated words, dropping any '#' comment.
std::vector<std::string_view> words(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && detail::is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !detail::is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Resolves a 1-based or negative (relative) OBJ index against `count`.
std::uint32_t resolve_index(std::string_view token, std::string_view whole, std::size_t count, std::size_t line,
                            const char* what) {
  const auto value = detail::parse_integer(token);
  if (!value || *value == 0) {
    throw Error(Errc::MalformedFaceToken, "bad " + std::string(what) + " index in " + detail::quote_token(whole), line);
  }
  const long long n = static_cast<long long>(count);
  const long long resolved = *value > 0 ? *value - 1 : n + *value;
  if (resolved < 0 || resolved >= n) {
    throw Error(Errc::IndexOutOfRange,
                std::string(what) + " index " + detail::quote_token(token) + " with " + std::to_string(count) + " defined",
                line);
  }
  return static_cast<std::uint32_t>(resolved);
}

std::string_view rest_of_line(std::string_view line, std::string_view directive) {
  std::size_t i = line.find(directive) + directive.size();
  while (i < line.size() && detail::is_space(line[i])) ++i;
  std::size_t end = line.size();
  while (end > i && detail::is_space(line[end - 1])) --end;
  return line.substr(i, end - i);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!fn(line, line_no)) return;
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
}

}  // namespace

TriMesh read_obj(std::string_view text) {
  std::vector<Vec3> positions;
  std::vector<UV> texcoords;
  std::vector<std::pair<std::vector<detail::Corner>, std::size_t>> polygons;
  bool textured = false;

  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto w = words(line);
    if (w.empty()) return true;
    auto number = [&](std::size_t i) {
      const auto v = detail::parse_double(w[i]);
      if (!v) throw Error(Errc::Syntax, "expected number, got " + detail::quote_token(w[i]), line_no);
      return *v;
    };
    if (w[0] == "v") {
      if (w.size() < 4) throw Error(Errc::Syntax, "vertex needs 3 coordinates", line_no);
      positions.push_back({number(1), number(2), number(3)});
    } else if (w[0] == "vt") {
      if (w.size() < 2) throw Error(Errc::Syntax, "texture coordinate needs at least u", line_no);
      texcoords.push_back({number(1), w.size() > 2 ? number(2) : 0.0});
    } else if (w[0] == "f") {
      if (w.size() < 4) throw Error(Errc::MalformedFaceToken, "face needs at least 3 vertices", line_no);
      std::vector<detail::Corner> corners;
      for (std::size_t i = 1; i < w.size(); ++i) {
        const std::string_view token = w[i];
        const std::size_t s1 = token.find('/');
        const std::string_view v_part = token.substr(0, s1);
        detail::Corner c{resolve_index(v_part, token, positions.size(), line_no, "vertex"), std::nullopt};
        if (s1 != std::string_view::npos) {
          const std::string_view rest = token.substr(s1 + 1);
          const std::size_t s2 = rest.find('/');
          const std::string_view t_part = rest.substr(0, s2);
          if (s2 != std::string_view::npos) {
            const std::string_view n_part = rest.substr(s2 + 1);
            if (n_part.find('/') != std::string_view::npos || (!n_part.empty() && !detail::parse_integer(n_part))) {
              throw Error(Errc::MalformedFaceToken, detail::quote_token(token), line_no);
            }
          } else if (t_part.empty()) {
            throw Error(Errc::MalformedFaceToken, detail::quote_token(token), line_no);
          }
          if (!t_part.empty()) {
            c.texcoord = resolve_index(t_part, token, texcoords.size(), line_no, "texture");
            textured = true;
          }
        }
        corners.push_back(c);
      }
      for (std::size_t k = 1; k + 1 < corners.size(); ++k) {
        const VertexId a = corners[0].vertex, b = corners[k].vertex, c = corners[k + 1].vertex;
        if (a == b || b == c || a == c) {
          throw Error(Errc::MalformedFaceToken, "face repeats a vertex index", line_no);
        }
      }
      polygons.emplace_back(std::move(corners), line_no);
    }
    return true;
  });

  // vt records alone make the mesh textured, so UVs survive on face-less files.
  textured = textured || !texcoords.empty();
  detail::WedgeResolver resolver(std::move(positions), std::move(texcoords), textured);
  std::vector<Face> faces;
  for (const auto& [corners, line_no] : polygons) {
    std::vector<VertexId> ids;
    ids.reserve(corners.size());
    for (const auto& c : corners) ids.push_back(resolver.resolve(c));
    for (std::size_t k = 1; k + 1 < ids.size(); ++k) faces.push_back({ids[0], ids[k], ids[k + 1]});
  }
  return std::move(resolver).finish(std::move(faces));
}

std::optional<std::string> obj_mtllib(std::string_view obj_text) {
  std::optional<std::string> found;
  for_each_line(obj_text, [&](std::string_view line, std::size_t) {
    const auto w = words(line);
    if (w.size() >= 2 && w[0] == "mtllib") {
      found = std::string(w[1]);
      return false;
    }
    return true;
  });
  return found;
}

std::optional<std::string> mtl_texture(std::string_view mtl_text) {
  std::optional<std::string> found;
  for_each_line(mtl_text, [&](std::string_view line, std::size_t) {
    const auto w = words(line);
    if (w.size() >= 2 && w[0] == "map_Kd") {
      found = std::string(rest_of_line(line, "map_Kd"));
      return false;
    }
    return true;
  });
  return found;
}

}  // namespace terramesh
