// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Each criterion also has a wall-clock budget.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "oracles.hpp"
#include "terramesh/commands.hpp"
#include "terramesh/error.hpp"
#include "terramesh/formats.hpp"
#include "terramesh/mesh_io.hpp"
#include "terramesh/quadric.hpp"
#include "terramesh/raster.hpp"
#include "terramesh/simplify.hpp"
#include "terramesh/terrain.hpp"

namespace fs = std::filesystem;
using namespace terramesh;
using terramesh::testing::uniform;

namespace {

// Reference full-scale run: 632468 faces decimated to 30116, and
// 322202 vertices to 18042.
constexpr double kReferenceFaceRatio = 30116.0 / 632468.0;
constexpr double kReferenceVertexSurvivalPct = 100.0 * 18042.0 / 322202.0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / "terramesh_acceptance") {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

// Fractal terrain used by the ratio, size and determinism criteria:
// 257 x 257 nodes, 131072 faces, 66049 vertices.
struct FractalInputs {
  std::string dem;
  std::string texture;
};

FractalInputs write_fractal_inputs(const Workspace& ws) {
  FractalInputs in{ws.path("fractal.asc"), ws.path("fractal.ppm")};
  write_file(in.dem, write_esri_ascii_grid(make_fractal_heightfield(8, 10.0, 300.0, 0.55, 42)));
  write_file(in.texture, write_ppm(make_gradient_texture(256, 256)));
  return in;
}

struct PipelineRun {
  int exit_code = -1;
  std::string obj_path, report_path, wrl_path;
  std::string diagnostics;
};

// Each run writes terrain.* into its own subdirectory so that the file names
// embedded in the outputs (mtllib, texture) agree between runs.
PipelineRun run_pipeline(const Workspace& ws, const FractalInputs& in, const std::string& subdir) {
  fs::create_directories(ws.path(subdir));
  PipelineRun run;
  run.obj_path = ws.path(subdir + "/terrain.obj");
  run.report_path = ws.path(subdir + "/terrain.json");
  run.wrl_path = ws.path(subdir + "/terrain.wrl");
  std::ostringstream out, err;
  run.exit_code = cli::run({"pipeline", "--dem", in.dem, "--texture", in.texture, "--target-ratio",
                            format("%.17g", kReferenceFaceRatio), "--out", run.obj_path, "--report", run.report_path},
                           out, err);
  run.diagnostics = err.str();
  return run;
}

Verdict ratio_reproduction(const Workspace& ws, const FractalInputs& in) {
  const PipelineRun run = run_pipeline(ws, in, "first");
  if (run.exit_code != 0) return {false, "pipeline exited " + std::to_string(run.exit_code) + ": " + run.diagnostics};
  const auto report = nlohmann::json::parse(read_file(run.report_path));
  const TriMesh out = load_mesh(run.obj_path);
  const std::size_t before_faces = report["before"]["faces"];
  const std::size_t before_vertices = report["before"]["vertices"];
  const auto lo = static_cast<std::size_t>(std::floor(kReferenceFaceRatio * 131072.0));
  const std::size_t faces = out.faces.size();
  const std::size_t vertices = out.positions.size();
  const double survival = 100.0 * static_cast<double>(vertices) / static_cast<double>(before_vertices);
  const double per_face = static_cast<double>(vertices) / static_cast<double>(faces);
  const bool pass = before_faces == 131072 && before_vertices == 66049 && faces >= lo && faces <= lo + 3 &&
                    std::abs(survival - kReferenceVertexSurvivalPct) <= 0.25 * kReferenceVertexSurvivalPct &&
                    per_face >= 0.45 && per_face <= 0.65;
  return {pass, format("faces %zu in [%zu, %zu], vertices %zu (survival %.2f%% vs %.2f%% +/-25%%, V/F %.3f)", faces,
                       lo, lo + 3, vertices, survival, kReferenceVertexSurvivalPct, per_face)};
}

Verdict size_direction(const Workspace& ws, const FractalInputs& in) {
  const TriMesh terrain = generate_terrain_mesh(load_heightfield(in.dem));
  const double obj = static_cast<double>(write_obj(terrain).obj.size());
  const double vrml = static_cast<double>(write_vrml(terrain).size());

  // Reduction of the decimated OBJ against the VRML intermediate, taken
  // from the pipeline run of the ratio criterion.
  const auto report = nlohmann::json::parse(read_file(ws.path("first/terrain.json")));
  const double reduction = report["reductions_pct"]["size"];
  const double before_kb = report["before"]["size_kb"];
  const double after_kb = report["after"]["size_kb"];
  const bool pass = obj <= 0.8 * vrml && reduction >= 55.0;
  return {pass, format("obj/vrml %.3f (<= 0.8); decimated %.0f KB -> %.0f KB, reduction %.2f%% (>= 55%%)", obj / vrml,
                       before_kb, after_kb, reduction)};
}

Verdict plane_exactness() {
  const TriMesh flat = generate_terrain_mesh(testing::constant_field(33, 33, 10.0, 0.0));
  SimplifyParams params;
  params.target_ratio = 0.1;
  const SimplifyResult r = simplify(flat, params);
  const BoundingBox box = bounding_box(flat);
  const double tol = 1e-9 * box.diagonal();
  double worst_z = 0.0, worst_perimeter = 0.0;
  for (const Vec3& p : r.mesh.positions) worst_z = std::max(worst_z, std::abs(p.z));
  for (const Edge& e : boundary_edges(r.mesh)) {
    for (VertexId v : {e.first, e.second}) {
      const Vec3& p = r.mesh.positions[v];
      const double d = std::min({std::abs(p.x - box.min.x), std::abs(p.x - box.max.x), std::abs(p.y - box.min.y),
                                 std::abs(p.y - box.max.y)});
      worst_perimeter = std::max(worst_perimeter, d);
    }
  }
  const bool pass = worst_z <= 1e-12 && worst_perimeter <= tol;
  return {pass, format("%zu -> %zu faces, max |z| %.3g (<= 1e-12), max perimeter offset %.3g (<= %.3g)",
                       flat.faces.size(), r.mesh.faces.size(), worst_z, worst_perimeter, tol)};
}

Verdict quadric_oracle() {
  std::mt19937_64 rng(2024);
  auto point = [&rng] { return Vec3{uniform(rng, -10, 10), uniform(rng, -10, 10), uniform(rng, -10, 10)}; };
  double worst = 0.0;
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const Vec3 a = point(), b = point(), c = point();
    const Quadric q = plane_quadric(a, b, c);
    const double area = testing::heron_area(a, b, c);
    for (int k = 0; k < 10; ++k) {
      const Vec3 p = point();
      const double d = testing::point_plane_distance(p, a, b, c);
      const double expected = area * d * d;
      const double rel = std::abs(q.evaluate(p) - expected) / expected;
      worst = std::max(worst, rel);
      ++checked;
    }
  }
  return {worst <= 1e-9, format("%d probes, worst relative error %.3g (<= 1e-9)", checked, worst)};
}

Verdict topology_suite() {
  const TriMesh sphere = testing::octasphere(2);
  SimplifyParams params;
  params.target_faces = 32;
  const SimplifyResult r = simplify(sphere, params);
  const long long chi = euler_characteristic(r.mesh);
  const std::size_t boundary = boundary_edges(r.mesh).size();
  const bool clean = validate(r.mesh).clean();
  const bool pass = sphere.faces.size() == 128 && r.target_reached && chi == 2 && boundary == 0 && clean;
  return {pass, format("%zu -> %zu faces, chi %lld, %zu boundary edges, validate %s", sphere.faces.size(),
                       r.mesh.faces.size(), chi, boundary, clean ? "clean" : "dirty")};
}

Verdict small_instance_oracle() {
  std::mt19937_64 rng(606);
  int agree = 0;
  double worst_ratio = 0.0;
  std::size_t states = 0;
  std::string failures;
  for (int i = 0; i < 10; ++i) {
    const TriMesh mesh = testing::small_surface(rng);
    SimplifyParams params;
    params.target_faces = 1 + rng() % (mesh.faces.size() - 1);
    const SimplifyResult greedy = simplify(mesh, params);
    const testing::ExhaustiveResult best = testing::exhaustive_collapse_search(mesh, params);
    states += best.states_visited;
    bool ok = greedy.target_reached == best.reachable;
    if (ok && greedy.target_reached) {
      const double optimum = *best.best_total_cost;
      const double total = greedy.total_cost();
      ok = total <= 10.0 * optimum;
      if (optimum > 0.0) worst_ratio = std::max(worst_ratio, total / optimum);
    }
    if (ok) {
      ++agree;
    } else {
      failures += format(" [mesh %d: %zu faces target %zu greedy %s/%.3g exhaustive %s/%.3g]", i, mesh.faces.size(),
                         *params.target_faces, greedy.target_reached ? "reached" : "missed", greedy.total_cost(),
                         best.reachable ? "reached" : "missed", best.best_total_cost.value_or(-1.0));
    }
  }
  return {agree == 10, format("%d/10 agree, worst greedy/optimum cost %.3f (<= 10), %zu states searched%s", agree,
                              worst_ratio, states, failures.c_str())};
}

Verdict format_fuzz() {
  std::mt19937_64 rng(777);
  int round_trips = 0;
  for (int i = 0; i < 10000; ++i) {
    const TriMesh m = testing::random_valid_mesh(rng);
    TriMesh via_obj = read_obj(write_obj(m).obj);
    via_obj.texture_name = m.texture_name;  // lives in the MTL side file
    if (meshes_equivalent(read_vrml(write_vrml(m)), m) && meshes_equivalent(via_obj, m)) ++round_trips;
  }

  static constexpr std::string_view kBytes = " \n-#/[]{},.\"0123456789e";
  int typed = 0, parsed = 0, untyped = 0;
  for (int i = 0; i < 10000; ++i) {
    const TriMesh seed = testing::random_valid_mesh(rng);
    std::string bytes = i % 2 == 0 ? write_vrml(seed) : write_obj(seed).obj;
    for (int k = 0, edits = 1 + static_cast<int>(rng() % 6); k < edits; ++k) {
      const std::size_t pos = rng() % (bytes.size() + 1);
      switch (rng() % 4) {
        case 0:
          if (pos < bytes.size()) bytes[pos] = static_cast<char>(rng());
          break;
        case 1:
          bytes.insert(pos, 1, kBytes[rng() % kBytes.size()]);
          break;
        case 2:
          if (pos < bytes.size()) bytes.erase(pos, 1 + rng() % 12);
          break;
        default:
          bytes.resize(pos);
          break;
      }
    }
    try {
      const TriMesh m = i % 2 == 0 ? read_vrml(bytes) : read_obj(bytes);
      const ValidationReport r = validate(m);
      if (r.out_of_range_faces.empty() && r.degenerate_faces.empty() && !r.uv_count_mismatch) {
        ++parsed;
      } else {
        ++untyped;
      }
    } catch (const Error&) {
      ++typed;
    } catch (...) {
      ++untyped;
    }
  }
  const bool pass = round_trips == 10000 && untyped == 0 && typed + parsed == 10000;
  return {pass, format("%d/10000 round trips exact; mutations: %d typed errors, %d valid meshes, %d other", round_trips,
                       typed, parsed, untyped)};
}

Verdict determinism(const Workspace& ws, const FractalInputs& in) {
  const PipelineRun again = run_pipeline(ws, in, "second");
  if (again.exit_code != 0) return {false, "second pipeline run failed: " + again.diagnostics};
  const bool obj_same = read_file(ws.path("first/terrain.obj")) == read_file(again.obj_path);
  const bool report_same = read_file(ws.path("first/terrain.json")) == read_file(again.report_path);
  return {obj_same && report_same,
          format("OBJ %s, JSON report %s", obj_same ? "identical" : "differs", report_same ? "identical" : "differs")};
}

}  // namespace

int main() {
  Workspace ws;
  const FractalInputs inputs = write_fractal_inputs(ws);

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {1, "ratio reproduction", 30, [&] { return ratio_reproduction(ws, inputs); }},
      {2, "size direction", 10, [&] { return size_direction(ws, inputs); }},
      {3, "plane exactness", 5, [] { return plane_exactness(); }},
      {4, "quadric oracle", 5, [] { return quadric_oracle(); }},
      {5, "topology suite", 5, [] { return topology_suite(); }},
      {6, "small-instance oracle", 60, [] { return small_instance_oracle(); }},
      {7, "format fuzz and round trip", 120, [] { return format_fuzz(); }},
      {8, "determinism", 30, [&] { return determinism(ws, inputs); }},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.budget_s;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %d %s: %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                seconds, c.budget_s, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
