#include "terramesh/simplify.hpp"

#include <cmath>
#include <numeric>
#include <queue>

#include "terramesh/collapse.hpp"
#include "terramesh/error.hpp"

namespace terramesh {

void SimplifyParams::validate() const {
  if (target_faces.has_value() == target_ratio.has_value()) {
    throw Error(Errc::InvalidParams, "exactly one of target_faces and target_ratio must be set");
  }
  if (target_faces && *target_faces == 0) throw Error(Errc::InvalidParams, "target_faces must be positive");
  if (target_ratio && !(*target_ratio > 0.0 && *target_ratio <= 1.0)) {
    throw Error(Errc::InvalidParams, "target_ratio must be in (0, 1]");
  }
  if (!(quality_threshold >= 0.0 && quality_threshold <= 1.0)) {
    throw Error(Errc::InvalidParams, "quality_threshold must be in [0, 1]");
  }
  if (!(boundary_weight > 0.0) || !std::isfinite(boundary_weight)) {
    throw Error(Errc::InvalidParams, "boundary_weight must be positive");
  }
  if (!(planar_weight >= 0.0) || !std::isfinite(planar_weight)) {
    throw Error(Errc::InvalidParams, "planar_weight must be non-negative");
  }
}

std::size_t SimplifyParams::resolve_target(std::size_t input_faces) const {
  if (target_faces) return std::min(*target_faces, input_faces);
  if (target_ratio) {
    const double t = std::floor(*target_ratio * static_cast<double>(input_faces));
    return std::min(static_cast<std::size_t>(t), input_faces);
  }
  return input_faces;
}

double SimplifyResult::total_cost() const noexcept {
  return std::accumulate(collapse_costs.begin(), collapse_costs.end(), 0.0);
}

namespace {

struct QueueEntry {
  double cost;
  VertexId lo;
  VertexId hi;
  std::uint32_t lo_version;
  std::uint32_t hi_version;
  CollapsePlan plan;
};

// std::priority_queue is a max-heap; invert for cheapest-first.
struct LaterInQueue {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const noexcept {
    if (a.cost != b.cost) return a.cost > b.cost;
    if (a.lo != b.lo) return a.lo > b.lo;
    return a.hi > b.hi;
  }
};

}  // namespace

SimplifyResult simplify(const TriMesh& mesh, const SimplifyParams& params) {
  params.validate();

  SimplifyResult result;
  result.target_faces = params.resolve_target(mesh.faces.size());

  CollapseState state(mesh, params, result.target_faces);

  std::priority_queue<QueueEntry, std::vector<QueueEntry>, LaterInQueue> queue;
  auto push = [&](const Edge& e) {
    if (auto plan = state.plan(e.first, e.second)) {
      queue.push({plan->cost, e.first, e.second, state.version(e.first), state.version(e.second), *plan});
    }
  };

  if (state.face_count() > result.target_faces) {
    for (const Edge& e : state.edges()) push(e);
  }

  while (state.face_count() > result.target_faces && !queue.empty()) {
    const QueueEntry top = queue.top();
    queue.pop();
    if (state.version(top.lo) != top.lo_version || state.version(top.hi) != top.hi_version) continue;
    if (!state.admissible(top.plan)) continue;
    state.apply(top.plan);
    result.collapse_costs.push_back(top.plan.cost);
    for (const Edge& e : state.edges_around(top.plan.keep)) push(e);
  }

  result.mesh = state.to_mesh();
  result.target_reached = target_reached(result.mesh.faces.size(), result.target_faces);
  result.stats = decimation_stats(mesh_stats(mesh), mesh_stats(result.mesh));
  return result;
}

}  // namespace terramesh
