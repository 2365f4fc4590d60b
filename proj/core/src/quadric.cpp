#include "terramesh/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "terramesh/error.hpp"

namespace terramesh {

namespace {

// -n . a without rounding the offset back to double.
long double plane_offset(const Vec3& n, const Vec3& a) {
  return -(static_cast<long double>(n.x) * a.x + static_cast<long double>(n.y) * a.y +
           static_cast<long double>(n.z) * a.z);
}

}  // namespace

Quadric plane_quadric(const Vec3& a, const Vec3& b, const Vec3& c, double degenerate_area) {
  const Vec3 n = triangle_normal(a, b, c, degenerate_area);
  return Quadric::from_plane(n, plane_offset(n, a), triangle_area(a, b, c));
}

Quadric plane_quadric(const TriMesh& mesh, std::size_t face_index) {
  const Face& f = mesh.faces.at(face_index);
  return plane_quadric(mesh.positions.at(f[0]), mesh.positions.at(f[1]), mesh.positions.at(f[2]),
                       degenerate_area_threshold(mesh));
}

Quadric boundary_constraint_quadric(const Vec3& a, const Vec3& b, const Vec3& face_normal, double weight) {
  const Vec3 edge = b - a;
  const Vec3 perpendicular = cross(edge, face_normal);
  const double len = norm(perpendicular);
  if (len == 0.0) return {};
  const Vec3 n = perpendicular * (1.0 / len);
  return Quadric::from_plane(n, plane_offset(n, a), weight * squared_norm(edge));
}

std::vector<Quadric> vertex_quadrics(const TriMesh& mesh, const VertexQuadricOptions& options) {
  std::vector<Quadric> quadrics(mesh.positions.size());
  if (mesh.faces.empty()) return quadrics;
  const double eps_area = degenerate_area_threshold(mesh);

  std::vector<std::optional<Vec3>> normals(mesh.faces.size());
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const Face& face = mesh.faces[f];
    const Vec3& a = mesh.positions[face[0]];
    const Vec3& b = mesh.positions[face[1]];
    const Vec3& c = mesh.positions[face[2]];
    if (triangle_area(a, b, c) < eps_area || triangle_area(a, b, c) == 0.0) continue;
    const Quadric q = plane_quadric(a, b, c, eps_area);
    normals[f] = triangle_normal(a, b, c, eps_area);
    for (VertexId v : face) quadrics[v] += q;
  }

  if (options.preserve_boundary) {
    const Adjacency adjacency(mesh);
    for (const auto& [edge, faces] : adjacency.edges()) {
      if (faces.size() != 1 || !normals[faces.front()]) continue;
      const Quadric q = boundary_constraint_quadric(mesh.positions[edge.first], mesh.positions[edge.second],
                                                    *normals[faces.front()], options.boundary_weight);
      quadrics[edge.first] += q;
      quadrics[edge.second] += q;
    }
  }
  return quadrics;
}

namespace {

Placement cheapest_of_endpoints_and_midpoint(const Quadric& q, const Vec3& v1, const Vec3& v2) {
  const Vec3 mid = (v1 + v2) * 0.5;
  const double c1 = q.evaluate(v1);
  const double c2 = q.evaluate(v2);
  const double cm = q.evaluate(mid);
  if (cm <= c1 && cm <= c2) return {mid, std::max(cm, 0.0)};
  if (c1 <= c2) return {v1, std::max(c1, 0.0)};
  return {v2, std::max(c2, 0.0)};
}

}  // namespace

Placement optimal_placement(const Quadric& q, const Vec3& v1, const Vec3& v2) {
  if (v1 == v2) return {v1, std::max(q.evaluate(v1), 0.0)};

  const double a00 = q(0, 0), a01 = q(0, 1), a02 = q(0, 2);
  const double a11 = q(1, 1), a12 = q(1, 2), a22 = q(2, 2);
  const double r0 = -q(0, 3), r1 = -q(1, 3), r2 = -q(2, 3);

  // Cofactors of the symmetric upper-left block.
  const double c00 = a11 * a22 - a12 * a12;
  const double c01 = a02 * a12 - a01 * a22;
  const double c02 = a01 * a12 - a02 * a11;
  const double det = a00 * c00 + a01 * c01 + a02 * c02;

  double scale = 0.0;
  for (double v : {a00, a01, a02, a11, a12, a22}) scale = std::max(scale, std::abs(v));

  if (scale > 0.0 && std::abs(det) >= 1e-10 * scale * scale * scale) {
    const double c11 = a00 * a22 - a02 * a02;
    const double c12 = a01 * a02 - a00 * a12;
    const double c22 = a00 * a11 - a01 * a01;
    const double inv = 1.0 / det;
    const Vec3 p{(c00 * r0 + c01 * r1 + c02 * r2) * inv, (c01 * r0 + c11 * r1 + c12 * r2) * inv,
                 (c02 * r0 + c12 * r1 + c22 * r2) * inv};
    if (is_finite(p)) return {p, std::max(q.evaluate(p), 0.0)};
  }
  return cheapest_of_endpoints_and_midpoint(q, v1, v2);
}

SegmentPlacement segment_placement(const Quadric& q, const Vec3& v1, const Vec3& v2) {
  const Vec3 d = v2 - v1;
  const Vec3 md{q(0, 0) * d.x + q(0, 1) * d.y + q(0, 2) * d.z, q(0, 1) * d.x + q(1, 1) * d.y + q(1, 2) * d.z,
                q(0, 2) * d.x + q(1, 2) * d.y + q(2, 2) * d.z};
  const double curvature = dot(d, md);
  const Vec3 grad_at_v1{q(0, 0) * v1.x + q(0, 1) * v1.y + q(0, 2) * v1.z + q(0, 3),
                        q(0, 1) * v1.x + q(1, 1) * v1.y + q(1, 2) * v1.z + q(1, 3),
                        q(0, 2) * v1.x + q(1, 2) * v1.y + q(2, 2) * v1.z + q(2, 3)};
  const double slope = dot(d, grad_at_v1);

  auto at = [&](double t) -> SegmentPlacement {
    const Vec3 p = t == 0.0 ? v1 : t == 1.0 ? v2 : v1 + d * t;
    return {p, std::max(q.evaluate(p), 0.0), t};
  };

  if (curvature > 0.0 && std::isfinite(curvature)) {
    const double t = std::clamp(-slope / curvature, 0.0, 1.0);
    if (std::isfinite(t)) return at(t);
  }
  const SegmentPlacement s1 = at(0.0), s2 = at(1.0), sm = at(0.5);
  if (sm.cost <= s1.cost && sm.cost <= s2.cost) return sm;
  return s1.cost <= s2.cost ? s1 : s2;
}

double triangle_quality(const Vec3& a, const Vec3& b, const Vec3& c) noexcept {
  const double denom = squared_norm(b - a) + squared_norm(c - b) + squared_norm(a - c);
  if (!(denom > 0.0)) return 0.0;
  const double q = 4.0 * std::sqrt(3.0) * triangle_area(a, b, c) / denom;
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace terramesh
