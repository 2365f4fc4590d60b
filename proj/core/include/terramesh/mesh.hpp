#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace terramesh {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) noexcept {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) noexcept {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) noexcept { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) noexcept { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
  friend constexpr Vec3 operator-(const Vec3& a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(const Vec3& a, const Vec3& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) noexcept { return std::sqrt(dot(a, a)); }
constexpr double squared_norm(const Vec3& a) noexcept { return dot(a, a); }

inline bool is_finite(const Vec3& a) noexcept {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Normalized texture coordinate. `v == 0` is the top (north) row of the image.
struct UV {
  double u = 0.0;
  double v = 0.0;
  friend constexpr bool operator==(const UV&, const UV&) = default;
};

using VertexId = std::uint32_t;
using Face = std::array<VertexId, 3>;

/// Unordered vertex pair, stored with `first < second`.
struct Edge {
  VertexId first = 0;
  VertexId second = 0;

  static constexpr Edge make(VertexId a, VertexId b) noexcept {
    return a < b ? Edge{a, b} : Edge{b, a};
  }
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Indexed triangle mesh with optional per-vertex texture coordinates.
/// `uvs` is either empty or the same length as `positions`.
struct TriMesh {
  std::vector<Vec3> positions;
  std::vector<UV> uvs;
  std::vector<Face> faces;
  std::optional<std::string> texture_name;

  bool has_uvs() const noexcept { return !uvs.empty(); }
  std::size_t vertex_count() const noexcept { return positions.size(); }
  std::size_t face_count() const noexcept { return faces.size(); }
};

/// Incidence structure derived from a TriMesh. Edges are kept in an ordered
/// map so iteration order depends only on the mesh.
class Adjacency {
 public:
  explicit Adjacency(const TriMesh& mesh);

  const std::vector<std::vector<std::uint32_t>>& vertex_faces() const noexcept {
    return vertex_faces_;
  }
  const std::map<Edge, std::vector<std::uint32_t>>& edges() const noexcept { return edges_; }

  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t incident_face_count(Edge e) const;

  friend bool operator==(const Adjacency&, const Adjacency&) = default;

 private:
  std::vector<std::vector<std::uint32_t>> vertex_faces_;
  std::map<Edge, std::vector<std::uint32_t>> edges_;
};

struct ValidationReport {
  std::vector<std::size_t> out_of_range_faces;
  std::vector<std::size_t> degenerate_faces;  // repeated index
  std::vector<std::size_t> duplicate_faces;   // same unordered index set as an earlier face
  std::vector<Edge> non_manifold_edges;       // three or more incident faces
  std::vector<VertexId> non_finite_vertices;
  bool uv_count_mismatch = false;

  // Informational only: terrain with nodata holes legitimately leaves
  // unreferenced grid nodes behind. Not counted by clean().
  std::vector<VertexId> isolated_vertices;

  bool clean() const noexcept;
};

ValidationReport validate(const TriMesh& mesh);

/// Unit normal of a triangle by the right-hand rule; throws DegenerateFace when
/// the area is below `degenerate_area`.
Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c, double degenerate_area);

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) noexcept;

/// Area below which a face of this mesh counts as degenerate:
/// 1e-12 times the squared bounding-box diagonal.
double degenerate_area_threshold(const TriMesh& mesh);

Vec3 face_normal(const TriMesh& mesh, std::size_t face_index);

std::vector<Edge> boundary_edges(const TriMesh& mesh);

struct BoundingBox {
  Vec3 min;
  Vec3 max;
  double diagonal() const noexcept { return norm(max - min); }
};

BoundingBox bounding_box(const TriMesh& mesh);
double surface_area(const TriMesh& mesh);

/// V - E + F counting only vertices referenced by at least one face.
long long euler_characteristic(const TriMesh& mesh);

/// Number of closed boundary polylines. Assumes boundary vertices have
/// degree two along the boundary.
std::size_t boundary_loop_count(const TriMesh& mesh);

/// Same counts, identical connectivity and texture name, positions and UVs
/// equal within `rel_tol` relative to the larger magnitude of each component.
bool meshes_equivalent(const TriMesh& a, const TriMesh& b, double rel_tol = 1e-5);

}  // namespace terramesh
