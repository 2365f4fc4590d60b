#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "terramesh/mesh.hpp"
#include "terramesh/stats.hpp"

namespace terramesh {

/// Decimation controls. Exactly one of `target_faces` / `target_ratio` must be
/// set; a ratio resolves to floor(ratio * input faces).
struct SimplifyParams {
  std::optional<std::size_t> target_faces;
  std::optional<double> target_ratio;  // (0, 1]

  double quality_threshold = 0.3;  // hard lower bound on triangle_quality of changed faces
  bool preserve_boundary = true;
  double boundary_weight = 1000.0;
  bool preserve_normal = true;   // reject collapses that turn a face normal by more than 90 degrees
  double planar_weight = 0.001;  // scaled by the squared bbox diagonal
  bool preserve_topology = true;

  /// Throws InvalidParams when the combination is malformed.
  void validate() const;

  /// Face count the run aims for, never below zero and never above `input_faces`.
  std::size_t resolve_target(std::size_t input_faces) const;
};

struct SimplifyResult {
  TriMesh mesh;
  DecimationStats stats;  // file sizes are left at 0
  std::size_t target_faces = 0;
  bool target_reached = false;
  std::vector<double> collapse_costs;  // in the order the collapses were applied

  double total_cost() const noexcept;
};

/// A run counts as reaching its target when it ends within one face of it.
/// Interior collapses remove two faces and a run never undershoots, so
/// target + 1 is the closest some meshes can get.
constexpr bool target_reached(std::size_t face_count, std::size_t target) noexcept {
  return face_count <= target + 1;
}

/// Greedy quadric edge-collapse decimation with lazy-deletion priority queue.
/// Candidates are ordered by (cost, lower vertex index, higher vertex index)
/// so identical inputs give identical outputs.
SimplifyResult simplify(const TriMesh& mesh, const SimplifyParams& params);

}  // namespace terramesh
