#include "terramesh/stats.hpp"

namespace terramesh {

MeshStats mesh_stats(const TriMesh& mesh, std::uint64_t file_size_bytes) {
  return {mesh.positions.size(), mesh.faces.size(), file_size_bytes};
}

double reduction_pct(double before, double after) noexcept {
  return before == 0.0 ? 0.0 : 100.0 * (before - after) / before;
}

namespace {

double survival_pct(double before, double after) noexcept {
  return before == 0.0 ? 0.0 : 100.0 * after / before;
}

double d(std::uint64_t v) noexcept { return static_cast<double>(v); }

}  // namespace

double DecimationStats::vertex_reduction_pct() const noexcept {
  return reduction_pct(d(before.vertex_count), d(after.vertex_count));
}
double DecimationStats::face_reduction_pct() const noexcept {
  return reduction_pct(d(before.face_count), d(after.face_count));
}
double DecimationStats::size_reduction_pct() const noexcept {
  return reduction_pct(d(before.file_size_bytes), d(after.file_size_bytes));
}
double DecimationStats::vertex_survival_pct() const noexcept {
  return survival_pct(d(before.vertex_count), d(after.vertex_count));
}
double DecimationStats::face_survival_pct() const noexcept {
  return survival_pct(d(before.face_count), d(after.face_count));
}
double DecimationStats::size_survival_pct() const noexcept {
  return survival_pct(d(before.file_size_bytes), d(after.file_size_bytes));
}

DecimationStats decimation_stats(const MeshStats& before, const MeshStats& after) { return {before, after}; }

}  // namespace terramesh
