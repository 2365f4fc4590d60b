#pragma once

// Per-corner (vertex, texcoord) pairs to the per-vertex UV model. A vertex
// whose corners disagree on the texcoord index is duplicated once per extra
// index.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "terramesh/mesh.hpp"

namespace terramesh::detail {

struct Corner {
  VertexId vertex;
  std::optional<std::uint32_t> texcoord;
};

class WedgeResolver {
 public:
  WedgeResolver(std::vector<Vec3> positions, std::vector<UV> texcoords, bool textured)
      : positions_(std::move(positions)),
        texcoords_(std::move(texcoords)),
        assigned_(positions_.size()),
        textured_(textured) {}

  VertexId resolve(const Corner& c) {
    if (!textured_ || !c.texcoord) return c.vertex;
    auto& slot = assigned_[c.vertex];
    if (!slot) {
      slot = *c.texcoord;
      return c.vertex;
    }
    if (*slot == *c.texcoord) return c.vertex;
    const auto key = std::make_pair(c.vertex, *c.texcoord);
    if (const auto it = splits_.find(key); it != splits_.end()) return it->second;
    const auto id = static_cast<VertexId>(positions_.size());
    positions_.push_back(positions_[c.vertex]);
    assigned_.push_back(*c.texcoord);
    splits_.emplace(key, id);
    return id;
  }

  /// Vertices never given a texcoord by a face fall back to the texcoord with
  /// the same index, then to (0, 0).
  TriMesh finish(std::vector<Face> faces) && {
    TriMesh mesh;
    if (textured_) {
      mesh.uvs.resize(positions_.size());
      for (std::size_t v = 0; v < positions_.size(); ++v) {
        if (assigned_[v]) {
          mesh.uvs[v] = texcoords_[*assigned_[v]];
        } else if (v < texcoords_.size()) {
          mesh.uvs[v] = texcoords_[v];
        }
      }
    }
    mesh.positions = std::move(positions_);
    mesh.faces = std::move(faces);
    return mesh;
  }

 private:
  std::vector<Vec3> positions_;
  std::vector<UV> texcoords_;
  std::vector<std::optional<std::uint32_t>> assigned_;
  std::map<std::pair<VertexId, std::uint32_t>, VertexId> splits_;
  bool textured_;
};

}  // namespace terramesh::detail
