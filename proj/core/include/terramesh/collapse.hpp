#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "terramesh/mesh.hpp"
#include "terramesh/quadric.hpp"
#include "terramesh/simplify.hpp"

namespace terramesh {

/// One proposed edge collapse: `remove` merges into `keep`, which moves to
/// `position`.
struct CollapsePlan {
  VertexId keep = 0;
  VertexId remove = 0;
  Vec3 position;
  UV uv;
  double cost = 0.0;
  std::size_t faces_removed = 0;
};

/// Mutable working copy of a mesh under edge-collapse decimation. The greedy
/// driver in simplify() and exhaustive searches both go through plan(),
/// admissible() and apply(), so they share one definition of which collapses
/// are legal and what they cost.
class CollapseState {
 public:
  /// Throws IndexOutOfRange / DegenerateFace for meshes with invalid index
  /// triples, InvalidParams for non-finite positions.
  CollapseState(const TriMesh& mesh, const SimplifyParams& params, std::size_t target_faces);

  std::size_t face_count() const noexcept { return face_count_; }
  std::size_t target_faces() const noexcept { return target_faces_; }

  /// Placement and cost for collapsing edge (a, b). Empty when (a, b) is not
  /// a collapsible edge: missing, non-manifold, or an interior edge joining
  /// two boundary vertices while the boundary is preserved.
  std::optional<CollapsePlan> plan(VertexId a, VertexId b) const;

  /// Topological, geometric and target-floor checks against the current state.
  bool admissible(const CollapsePlan& plan) const;

  void apply(const CollapsePlan& plan);

  /// All current edges, sorted.
  std::vector<Edge> edges() const;

  /// Edges touching `v` or any of its neighbours; the set whose plans can
  /// change when `v` is the survivor of a collapse.
  std::vector<Edge> edges_around(VertexId v) const;

  std::vector<VertexId> neighbors(VertexId v) const;
  bool is_boundary(VertexId v) const;
  std::uint32_t version(VertexId v) const { return version_[v]; }

  /// Live vertices (in original order) and faces, re-indexed.
  TriMesh to_mesh() const;

 private:
  std::vector<std::uint32_t> edge_faces(VertexId a, VertexId b) const;
  std::optional<Vec3> current_normal(const Face& f) const;
  void detach_face(std::uint32_t f);

  SimplifyParams params_;
  std::size_t target_faces_;
  std::size_t face_count_ = 0;
  double degenerate_area_ = 0.0;
  double planar_scale_ = 0.0;

  std::vector<Vec3> positions_;
  std::vector<UV> uvs_;
  std::vector<Quadric> quadrics_;
  std::vector<bool> vertex_alive_;
  std::vector<std::uint32_t> version_;
  std::vector<Face> faces_;
  std::vector<bool> face_alive_;
  std::vector<std::vector<std::uint32_t>> vertex_faces_;
  std::optional<std::string> texture_name_;
};

}  // namespace terramesh
