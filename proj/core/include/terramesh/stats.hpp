#pragma once

#include <cstdint>

#include "terramesh/mesh.hpp"

namespace terramesh {

/// Size accounting for one mesh. `file_size_bytes` is 0 when the mesh has not
/// been serialized.
struct MeshStats {
  std::uint64_t vertex_count = 0;
  std::uint64_t face_count = 0;
  std::uint64_t file_size_bytes = 0;

  /// 1 KB = 1024 bytes.
  double size_kb() const noexcept { return static_cast<double>(file_size_bytes) / 1024.0; }
};

MeshStats mesh_stats(const TriMesh& mesh, std::uint64_t file_size_bytes = 0);

/// Before/after record. reduction = 100 * (before - after) / before and
/// survival = 100 * after / before; both are 0 when `before` is 0.
struct DecimationStats {
  MeshStats before;
  MeshStats after;

  double vertex_reduction_pct() const noexcept;
  double face_reduction_pct() const noexcept;
  double size_reduction_pct() const noexcept;
  double vertex_survival_pct() const noexcept;
  double face_survival_pct() const noexcept;
  double size_survival_pct() const noexcept;
};

DecimationStats decimation_stats(const MeshStats& before, const MeshStats& after);

double reduction_pct(double before, double after) noexcept;

}  // namespace terramesh
