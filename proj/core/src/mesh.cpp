#include "terramesh/mesh.hpp"

#include <algorithm>
#include <set>

#include "terramesh/error.hpp"

namespace terramesh {

Adjacency::Adjacency(const TriMesh& mesh) : vertex_faces_(mesh.positions.size()) {
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const auto fi = static_cast<std::uint32_t>(f);
    for (int k = 0; k < 3; ++k) {
      const VertexId a = face[k];
      const VertexId b = face[(k + 1) % 3];
      if (a < vertex_faces_.size()) vertex_faces_[a].push_back(fi);
      if (a != b) edges_[Edge::make(a, b)].push_back(fi);
    }
  }
}

std::size_t Adjacency::incident_face_count(Edge e) const {
  const auto it = edges_.find(e);
  return it == edges_.end() ? 0 : it->second.size();
}

bool ValidationReport::clean() const noexcept {
  return out_of_range_faces.empty() && degenerate_faces.empty() && duplicate_faces.empty() &&
         non_manifold_edges.empty() && non_finite_vertices.empty() && !uv_count_mismatch;
}

ValidationReport validate(const TriMesh& mesh) {
  ValidationReport report;
  const std::size_t n = mesh.positions.size();

  for (std::size_t v = 0; v < n; ++v) {
    if (!is_finite(mesh.positions[v])) report.non_finite_vertices.push_back(static_cast<VertexId>(v));
  }
  report.uv_count_mismatch = mesh.has_uvs() && mesh.uvs.size() != n;

  std::vector<bool> referenced(n, false);
  std::set<Face> seen;
  TriMesh usable;
  usable.positions = mesh.positions;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    if (face[0] >= n || face[1] >= n || face[2] >= n) {
      report.out_of_range_faces.push_back(f);
      continue;
    }
    for (VertexId v : face) referenced[v] = true;
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      report.degenerate_faces.push_back(f);
      continue;
    }
    Face key = face;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) report.duplicate_faces.push_back(f);
    usable.faces.push_back(face);
  }

  const Adjacency adjacency(usable);
  for (const auto& [edge, faces] : adjacency.edges()) {
    if (faces.size() > 2) report.non_manifold_edges.push_back(edge);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!referenced[v]) report.isolated_vertices.push_back(static_cast<VertexId>(v));
  }
  return report;
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) noexcept {
  return 0.5 * norm(cross(b - a, c - a));
}

Vec3 triangle_normal(const Vec3& a, const Vec3& b, const Vec3& c, double degenerate_area) {
  const Vec3 n = cross(b - a, c - a);
  const double len = norm(n);
  if (!(0.5 * len >= degenerate_area) || len == 0.0) {
    throw Error(Errc::DegenerateFace, "triangle area below degeneracy threshold");
  }
  return n * (1.0 / len);
}

double degenerate_area_threshold(const TriMesh& mesh) {
  const double diag = bounding_box(mesh).diagonal();
  return 1e-12 * diag * diag;
}

Vec3 face_normal(const TriMesh& mesh, std::size_t face_index) {
  if (face_index >= mesh.faces.size()) {
    throw Error(Errc::IndexOutOfRange, "face " + std::to_string(face_index));
  }
  const Face& f = mesh.faces[face_index];
  for (VertexId v : f) {
    if (v >= mesh.positions.size()) throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(v));
  }
  return triangle_normal(mesh.positions[f[0]], mesh.positions[f[1]], mesh.positions[f[2]],
                         degenerate_area_threshold(mesh));
}

std::vector<Edge> boundary_edges(const TriMesh& mesh) {
  std::vector<Edge> result;
  const Adjacency adjacency(mesh);
  for (const auto& [edge, faces] : adjacency.edges()) {
    if (faces.size() == 1) result.push_back(edge);
  }
  return result;
}

BoundingBox bounding_box(const TriMesh& mesh) {
  if (mesh.positions.empty()) throw Error(Errc::EmptyMesh, "bounding box of a mesh without vertices");
  BoundingBox box{mesh.positions.front(), mesh.positions.front()};
  for (const Vec3& p : mesh.positions) {
    box.min = {std::min(box.min.x, p.x), std::min(box.min.y, p.y), std::min(box.min.z, p.z)};
    box.max = {std::max(box.max.x, p.x), std::max(box.max.y, p.y), std::max(box.max.z, p.z)};
  }
  return box;
}

double surface_area(const TriMesh& mesh) {
  if (mesh.faces.empty()) throw Error(Errc::EmptyMesh, "surface area of a mesh without faces");
  double total = 0.0;
  for (const Face& f : mesh.faces) {
    total += triangle_area(mesh.positions.at(f[0]), mesh.positions.at(f[1]), mesh.positions.at(f[2]));
  }
  return total;
}

long long euler_characteristic(const TriMesh& mesh) {
  const Adjacency adjacency(mesh);
  long long referenced = 0;
  for (const auto& faces : adjacency.vertex_faces()) {
    if (!faces.empty()) ++referenced;
  }
  return referenced - static_cast<long long>(adjacency.edge_count()) +
         static_cast<long long>(mesh.faces.size());
}

std::size_t boundary_loop_count(const TriMesh& mesh) {
  const std::vector<Edge> edges = boundary_edges(mesh);
  std::map<VertexId, std::vector<VertexId>> next;
  for (const Edge& e : edges) {
    next[e.first].push_back(e.second);
    next[e.second].push_back(e.first);
  }
  std::set<Edge> visited;
  std::size_t loops = 0;
  for (const Edge& start : edges) {
    if (visited.contains(start)) continue;
    ++loops;
    // Walk until no unvisited boundary edge continues the chain.
    std::vector<Edge> stack{start};
    while (!stack.empty()) {
      const Edge e = stack.back();
      stack.pop_back();
      if (!visited.insert(e).second) continue;
      for (VertexId end : {e.first, e.second}) {
        for (VertexId w : next[end]) {
          const Edge f = Edge::make(end, w);
          if (!visited.contains(f)) stack.push_back(f);
        }
      }
    }
  }
  return loops;
}

namespace {

bool close(double a, double b, double rel_tol) {
  if (a == b) return true;
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

bool meshes_equivalent(const TriMesh& a, const TriMesh& b, double rel_tol) {
  if (a.positions.size() != b.positions.size() || a.faces != b.faces ||
      a.uvs.size() != b.uvs.size() || a.texture_name != b.texture_name) {
    return false;
  }
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    const Vec3& p = a.positions[i];
    const Vec3& q = b.positions[i];
    if (!close(p.x, q.x, rel_tol) || !close(p.y, q.y, rel_tol) || !close(p.z, q.z, rel_tol)) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.uvs.size(); ++i) {
    if (!close(a.uvs[i].u, b.uvs[i].u, rel_tol) || !close(a.uvs[i].v, b.uvs[i].v, rel_tol)) {
      return false;
    }
  }
  return true;
}

}  // namespace terramesh
