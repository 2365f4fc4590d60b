#include "terramesh/collapse.hpp"

#include <algorithm>
#include <cmath>

#include "terramesh/error.hpp"

namespace terramesh {

namespace {

bool contains(const Face& f, VertexId v) { return f[0] == v || f[1] == v || f[2] == v; }

template <typename T>
void sort_unique(std::vector<T>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

// Projection parameter of p onto segment [a, b], clamped to [0, 1].
double segment_parameter(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 d = b - a;
  const double len2 = squared_norm(d);
  if (len2 == 0.0) return 0.0;
  return std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
}

UV lerp(const UV& a, const UV& b, double t) { return {a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)}; }

}  // namespace

CollapseState::CollapseState(const TriMesh& mesh, const SimplifyParams& params, std::size_t target_faces)
    : params_(params),
      target_faces_(target_faces),
      face_count_(mesh.faces.size()),
      positions_(mesh.positions),
      uvs_(mesh.uvs),
      vertex_alive_(mesh.positions.size(), true),
      version_(mesh.positions.size(), 0),
      faces_(mesh.faces),
      face_alive_(mesh.faces.size(), true),
      vertex_faces_(mesh.positions.size()),
      texture_name_(mesh.texture_name) {
  const std::size_t n = positions_.size();
  if (mesh.has_uvs() && mesh.uvs.size() != n) throw Error(Errc::InvalidParams, "uv count differs from vertex count");
  for (const Vec3& p : positions_) {
    if (!is_finite(p)) throw Error(Errc::InvalidParams, "non-finite vertex position");
  }
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& face = faces_[f];
    for (VertexId v : face) {
      if (v >= n) throw Error(Errc::IndexOutOfRange, "face " + std::to_string(f) + " references vertex " + std::to_string(v));
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw Error(Errc::DegenerateFace, "face " + std::to_string(f) + " repeats a vertex index");
    }
    for (VertexId v : face) vertex_faces_[v].push_back(static_cast<std::uint32_t>(f));
  }
  if (n == 0) return;

  const double diag = bounding_box(mesh).diagonal();
  degenerate_area_ = 1e-12 * diag * diag;
  planar_scale_ = params.planar_weight * diag * diag;
  quadrics_ = vertex_quadrics(mesh, {params.preserve_boundary, params.boundary_weight});
}

std::vector<std::uint32_t> CollapseState::edge_faces(VertexId a, VertexId b) const {
  std::vector<std::uint32_t> result;
  for (std::uint32_t f : vertex_faces_[a]) {
    if (contains(faces_[f], b)) result.push_back(f);
  }
  return result;
}

std::vector<VertexId> CollapseState::neighbors(VertexId v) const {
  std::vector<VertexId> result;
  result.reserve(vertex_faces_[v].size() * 2);
  for (std::uint32_t f : vertex_faces_[v]) {
    for (VertexId w : faces_[f]) {
      if (w != v) result.push_back(w);
    }
  }
  sort_unique(result);
  return result;
}

bool CollapseState::is_boundary(VertexId v) const {
  // Each incident face lists two opposite endpoints; an endpoint seen once
  // lies on an edge with a single face.
  std::vector<VertexId> ends;
  ends.reserve(vertex_faces_[v].size() * 2);
  for (std::uint32_t f : vertex_faces_[v]) {
    for (VertexId w : faces_[f]) {
      if (w != v) ends.push_back(w);
    }
  }
  std::sort(ends.begin(), ends.end());
  for (std::size_t i = 0; i < ends.size();) {
    std::size_t j = i;
    while (j < ends.size() && ends[j] == ends[i]) ++j;
    if (j - i == 1) return true;
    i = j;
  }
  return false;
}

std::optional<Vec3> CollapseState::current_normal(const Face& f) const {
  const Vec3& a = positions_[f[0]];
  const Vec3& b = positions_[f[1]];
  const Vec3& c = positions_[f[2]];
  const Vec3 n = cross(b - a, c - a);
  const double len = norm(n);
  if (!(0.5 * len >= degenerate_area_) || len == 0.0) return std::nullopt;
  return n * (1.0 / len);
}

std::optional<CollapsePlan> CollapseState::plan(VertexId a, VertexId b) const {
  if (a == b || a >= positions_.size() || b >= positions_.size()) return std::nullopt;
  if (!vertex_alive_[a] || !vertex_alive_[b]) return std::nullopt;
  if (a > b) std::swap(a, b);

  const std::vector<std::uint32_t> shared = edge_faces(a, b);
  if (shared.empty() || shared.size() > 2) return std::nullopt;

  const Vec3& pa = positions_[a];
  const Vec3& pb = positions_[b];
  Quadric q = quadrics_[a] + quadrics_[b];

  if (planar_scale_ > 0.0) {
    Vec3 n_sum;
    for (std::uint32_t f : shared) {
      if (const auto n = current_normal(faces_[f])) n_sum += *n;
    }
    const double len = norm(n_sum);
    if (len > 0.0) {
      const Vec3 n = n_sum * (1.0 / len);
      q += Quadric::from_plane(n, -dot(n, (pa + pb) * 0.5), planar_scale_);
    }
  }

  CollapsePlan result;
  result.keep = a;
  result.remove = b;
  result.faces_removed = shared.size();
  double t = 0.0;

  if (params_.preserve_boundary) {
    const bool boundary_edge = shared.size() == 1;
    const bool a_on_boundary = is_boundary(a);
    const bool b_on_boundary = is_boundary(b);
    if (boundary_edge) {
      // Endpoints only: a point inside the current segment is off the input
      // boundary once either end has been moved along a bend.
      const double cost_a = std::max(q.evaluate(pa), 0.0);
      const double cost_b = std::max(q.evaluate(pb), 0.0);
      if (cost_b < cost_a) {
        result.keep = b;
        result.remove = a;
        result.position = pb;
        result.cost = cost_b;
        t = 1.0;
      } else {
        result.position = pa;
        result.cost = cost_a;
      }
    } else if (a_on_boundary && b_on_boundary) {
      return std::nullopt;
    } else if (a_on_boundary) {
      result.position = pa;
      result.cost = std::max(q.evaluate(pa), 0.0);
      t = 0.0;
    } else if (b_on_boundary) {
      result.keep = b;
      result.remove = a;
      result.position = pb;
      result.cost = std::max(q.evaluate(pb), 0.0);
      t = 1.0;
    } else {
      const Placement p = optimal_placement(q, pa, pb);
      result.position = p.position;
      result.cost = p.cost;
      t = segment_parameter(p.position, pa, pb);
    }
  } else {
    const Placement p = optimal_placement(q, pa, pb);
    result.position = p.position;
    result.cost = p.cost;
    t = segment_parameter(p.position, pa, pb);
  }

  if (!uvs_.empty()) result.uv = lerp(uvs_[a], uvs_[b], t);
  if (!std::isfinite(result.cost) || !is_finite(result.position)) return std::nullopt;
  return result;
}

bool CollapseState::admissible(const CollapsePlan& plan) const {
  const VertexId keep = plan.keep;
  const VertexId remove = plan.remove;
  if (keep == remove || keep >= positions_.size() || remove >= positions_.size()) return false;
  if (!vertex_alive_[keep] || !vertex_alive_[remove]) return false;

  const std::vector<std::uint32_t> shared = edge_faces(keep, remove);
  if (shared.empty() || shared.size() > 2 || shared.size() != plan.faces_removed) return false;
  if (face_count_ < target_faces_ + shared.size()) return false;

  auto is_shared = [&shared](std::uint32_t f) { return std::find(shared.begin(), shared.end(), f) != shared.end(); };

  // The collapse must leave at least one face around the survivor and around
  // every vertex opposite the collapsed edge.
  if (vertex_faces_[keep].size() + vertex_faces_[remove].size() == 2 * shared.size()) return false;
  std::vector<VertexId> opposite;
  for (std::uint32_t f : shared) {
    for (VertexId w : faces_[f]) {
      if (w != keep && w != remove) opposite.push_back(w);
    }
  }
  sort_unique(opposite);
  for (VertexId o : opposite) {
    if (std::all_of(vertex_faces_[o].begin(), vertex_faces_[o].end(), is_shared)) return false;
  }

  const std::vector<VertexId> keep_ring = neighbors(keep);
  const std::vector<VertexId> remove_ring = neighbors(remove);
  std::vector<VertexId> common;
  std::set_intersection(keep_ring.begin(), keep_ring.end(), remove_ring.begin(), remove_ring.end(),
                        std::back_inserter(common));

  if (params_.preserve_topology) {
    // Link condition; the boundary counts as a shared virtual vertex.
    if (common != opposite) return false;
    if (shared.size() == 2 && is_boundary(keep) && is_boundary(remove)) return false;
  } else {
    // Merging edges (keep, w) and (remove, w) must not exceed two faces.
    for (VertexId w : common) {
      if (std::binary_search(opposite.begin(), opposite.end(), w)) continue;
      if (edge_faces(keep, w).size() + edge_faces(remove, w).size() > 2) return false;
    }
  }

  // No surviving face of `remove` may duplicate one of `keep`.
  for (std::uint32_t f : vertex_faces_[remove]) {
    if (is_shared(f)) continue;
    VertexId x = 0, y = 0;
    int k = 0;
    for (VertexId w : faces_[f]) {
      if (w == remove) continue;
      (k++ == 0 ? x : y) = w;
    }
    for (std::uint32_t g : vertex_faces_[keep]) {
      if (!is_shared(g) && contains(faces_[g], x) && contains(faces_[g], y)) return false;
    }
  }

  const bool keep_moves = positions_[keep] != plan.position;
  auto check_face = [&](std::uint32_t f) {
    const Face& face = faces_[f];
    Vec3 moved[3];
    for (int k = 0; k < 3; ++k) {
      const VertexId w = face[k];
      moved[k] = (w == keep || w == remove) ? plan.position : positions_[w];
    }
    const Vec3 n = cross(moved[1] - moved[0], moved[2] - moved[0]);
    const double len = norm(n);
    if (!(0.5 * len >= degenerate_area_) || len == 0.0) return false;
    if (params_.preserve_normal) {
      if (const auto before = current_normal(face)) {
        if (dot(*before, n) < 0.0) return false;
      }
    }
    return triangle_quality(moved[0], moved[1], moved[2]) >= params_.quality_threshold;
  };

  for (std::uint32_t f : vertex_faces_[remove]) {
    if (!is_shared(f) && !check_face(f)) return false;
  }
  if (keep_moves) {
    for (std::uint32_t f : vertex_faces_[keep]) {
      if (!is_shared(f) && !check_face(f)) return false;
    }
  }
  return true;
}

void CollapseState::detach_face(std::uint32_t f) {
  face_alive_[f] = false;
  for (VertexId v : faces_[f]) {
    auto& list = vertex_faces_[v];
    list.erase(std::remove(list.begin(), list.end(), f), list.end());
  }
  --face_count_;
}

void CollapseState::apply(const CollapsePlan& plan) {
  const VertexId keep = plan.keep;
  const VertexId remove = plan.remove;
  for (std::uint32_t f : edge_faces(keep, remove)) detach_face(f);

  for (std::uint32_t f : vertex_faces_[remove]) {
    for (VertexId& w : faces_[f]) {
      if (w == remove) w = keep;
    }
    vertex_faces_[keep].push_back(f);
  }
  vertex_faces_[remove].clear();
  vertex_alive_[remove] = false;

  positions_[keep] = plan.position;
  if (!uvs_.empty()) uvs_[keep] = plan.uv;
  quadrics_[keep] += quadrics_[remove];

  ++version_[keep];
  ++version_[remove];
  for (VertexId w : neighbors(keep)) ++version_[w];
}

std::vector<Edge> CollapseState::edges() const {
  std::vector<Edge> result;
  result.reserve(face_count_ * 3);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (!face_alive_[f]) continue;
    const Face& face = faces_[f];
    result.push_back(Edge::make(face[0], face[1]));
    result.push_back(Edge::make(face[1], face[2]));
    result.push_back(Edge::make(face[2], face[0]));
  }
  sort_unique(result);
  return result;
}

std::vector<Edge> CollapseState::edges_around(VertexId v) const {
  std::vector<VertexId> ring = neighbors(v);
  ring.push_back(v);
  std::vector<Edge> result;
  for (VertexId s : ring) {
    for (std::uint32_t f : vertex_faces_[s]) {
      for (VertexId w : faces_[f]) {
        if (w != s) result.push_back(Edge::make(s, w));
      }
    }
  }
  sort_unique(result);
  return result;
}

TriMesh CollapseState::to_mesh() const {
  TriMesh mesh;
  mesh.texture_name = texture_name_;
  std::vector<VertexId> remap(positions_.size(), 0);
  for (std::size_t v = 0; v < positions_.size(); ++v) {
    if (!vertex_alive_[v]) continue;
    remap[v] = static_cast<VertexId>(mesh.positions.size());
    mesh.positions.push_back(positions_[v]);
    if (!uvs_.empty()) mesh.uvs.push_back(uvs_[v]);
  }
  mesh.faces.reserve(face_count_);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    if (!face_alive_[f]) continue;
    const Face& face = faces_[f];
    mesh.faces.push_back({remap[face[0]], remap[face[1]], remap[face[2]]});
  }
  return mesh;
}

}  // namespace terramesh
