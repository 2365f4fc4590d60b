#pragma once

#include <array>
#include <utility>
#include <vector>

#include "terramesh/mesh.hpp"

namespace terramesh {

/// Symmetric 4x4 error matrix stored as its upper triangle. Q(p) = p^T Q p
/// for homogeneous p = (x, y, z, 1) is a weighted sum of squared distances to
/// the planes that were accumulated into it. Coefficients are kept in long
/// double so points close to the planes still evaluate to a small relative
/// error.
class Quadric {
 public:
  constexpr Quadric() = default;

  /// weight * (n . p + d)^2 for the plane n . p + d = 0 (n need not be unit).
  static constexpr Quadric from_plane(const Vec3& n, long double d, double weight) noexcept {
    const long double a = n.x, b = n.y, c = n.z;
    Quadric q;
    q.m_ = {a * a, a * b, a * c, a * d, b * b, b * c, b * d, c * c, c * d, d * d};
    for (long double& v : q.m_) v *= weight;
    return q;
  }

  constexpr double evaluate(const Vec3& p) const noexcept {
    const auto& [a2, ab, ac, ad, b2, bc, bd, c2, cd, d2] = m_;
    const long double x = p.x, y = p.y, z = p.z;
    return static_cast<double>(a2 * x * x + 2 * ab * x * y + 2 * ac * x * z + 2 * ad * x + b2 * y * y +
                               2 * bc * y * z + 2 * bd * y + c2 * z * z + 2 * cd * z + d2);
  }

  /// Entry (row, col) of the full symmetric matrix, 0 <= row, col < 4.
  constexpr double operator()(int row, int col) const noexcept {
    if (row > col) std::swap(row, col);
    constexpr int kRowStart[4] = {0, 4, 7, 9};
    return static_cast<double>(m_[kRowStart[row] + (col - row)]);
  }

  constexpr const std::array<long double, 10>& coefficients() const noexcept { return m_; }

  constexpr Quadric& operator+=(const Quadric& o) noexcept {
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
    return *this;
  }
  constexpr Quadric& operator*=(double s) noexcept {
    for (long double& v : m_) v *= s;
    return *this;
  }
  friend constexpr Quadric operator+(Quadric a, const Quadric& b) noexcept { return a += b; }
  friend constexpr Quadric operator*(Quadric a, double s) noexcept { return a *= s; }
  friend constexpr bool operator==(const Quadric&, const Quadric&) = default;

 private:
  std::array<long double, 10> m_{};
};

/// Area-weighted quadric of the plane through a triangle. Throws
/// DegenerateFace when the area is below `degenerate_area`.
Quadric plane_quadric(const Vec3& a, const Vec3& b, const Vec3& c, double degenerate_area = 0.0);
Quadric plane_quadric(const TriMesh& mesh, std::size_t face_index);

/// Plane through the boundary edge (a, b) perpendicular to the adjacent face
/// with unit normal `face_normal`, weighted by weight * |b - a|^2.
Quadric boundary_constraint_quadric(const Vec3& a, const Vec3& b, const Vec3& face_normal, double weight);

struct VertexQuadricOptions {
  bool preserve_boundary = true;
  double boundary_weight = 1000.0;
};

/// Sum of incident face quadrics per vertex, plus boundary constraint planes
/// when requested. Degenerate faces contribute nothing.
std::vector<Quadric> vertex_quadrics(const TriMesh& mesh, const VertexQuadricOptions& options = {});

struct Placement {
  Vec3 position;
  double cost = 0.0;
};

/// Minimizer of `q` for the collapse of edge (v1, v2). Solves grad Q = 0 when
/// the 3x3 system is well conditioned (|det| >= 1e-10 * scale^3), otherwise
/// takes the cheapest of {v1, v2, midpoint} with ties going to the midpoint.
/// The cost is clamped at zero.
Placement optimal_placement(const Quadric& q, const Vec3& v1, const Vec3& v2);

/// Minimizer of `q` restricted to the segment [v1, v2]; `t` is the
/// parameter of the chosen point along the segment.
struct SegmentPlacement {
  Vec3 position;
  double cost = 0.0;
  double t = 0.0;
};
SegmentPlacement segment_placement(const Quadric& q, const Vec3& v1, const Vec3& v2);

/// 4 * sqrt(3) * area / (sum of squared edge lengths): 1 for equilateral,
/// 0 for collinear or coincident points.
double triangle_quality(const Vec3& a, const Vec3& b, const Vec3& c) noexcept;

}  // namespace terramesh
