#pragma once

#include <cstddef>
#include <optional>

#include "terramesh/mesh.hpp"
#include "terramesh/simplify.hpp"

namespace terramesh::testing {

/// Unsigned distance from p to the plane through triangle (a, b, c),
/// computed by projection rather than through any quadric.
double point_plane_distance(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

/// Heron's formula, independent of the cross-product area used by the library.
double heron_area(const Vec3& a, const Vec3& b, const Vec3& c);

struct ExhaustiveResult {
  bool reachable = false;                // some complete collapse sequence ends within target + 1
  std::optional<double> best_total_cost;  // cheapest such sequence
  std::size_t states_visited = 0;
};

/// Enumerates every sequence of admissible single collapses (the same legality
/// and placement rules simplify() uses) until the target is hit exactly or no
/// admissible collapse remains, and reports the cheapest successful one.
/// Intended for meshes with a dozen faces or fewer.
ExhaustiveResult exhaustive_collapse_search(const TriMesh& mesh, const SimplifyParams& params);

}  // namespace terramesh::testing
