#include "terramesh/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>

#include "terramesh/error.hpp"
#include "terramesh/mesh_io.hpp"
#include "terramesh/simplify.hpp"
#include "terramesh/stats.hpp"
#include "terramesh/terrain.hpp"

namespace terramesh::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Raised for parameter problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimplifyFlags {
  std::optional<std::size_t> target_faces;
  std::optional<double> target_ratio;
  double quality = 0.3;
  double boundary_weight = 1000.0;
  double planar_weight = 0.001;
  bool no_preserve_boundary = false;
  bool no_preserve_normal = false;
  bool no_preserve_topology = false;

  void attach(CLI::App& cmd) {
    auto* faces = cmd.add_option("--target-faces", target_faces, "Stop at this many faces");
    auto* ratio = cmd.add_option("--target-ratio", target_ratio, "Stop at floor(ratio * input faces), ratio in (0, 1]");
    faces->excludes(ratio);
    ratio->excludes(faces);
    cmd.add_option("--quality", quality, "Minimum triangle quality of changed faces, in [0, 1]")
        ->capture_default_str();
    cmd.add_option("--boundary-weight", boundary_weight, "Weight of boundary constraint planes")
        ->capture_default_str();
    cmd.add_option("--planar-weight", planar_weight, "Planar simplification strength")->capture_default_str();
    cmd.add_flag("--no-preserve-boundary", no_preserve_boundary, "Let the mesh boundary move");
    cmd.add_flag("--no-preserve-normal", no_preserve_normal, "Allow collapses that flip face normals");
    cmd.add_flag("--no-preserve-topology", no_preserve_topology, "Skip the link condition");
  }

  SimplifyParams params() const {
    if (!target_faces && !target_ratio) throw UsageError("one of --target-faces or --target-ratio is required");
    SimplifyParams p;
    p.target_faces = target_faces;
    p.target_ratio = target_ratio;
    p.quality_threshold = quality;
    p.boundary_weight = boundary_weight;
    p.planar_weight = planar_weight;
    p.preserve_boundary = !no_preserve_boundary;
    p.preserve_normal = !no_preserve_normal;
    p.preserve_topology = !no_preserve_topology;
    p.validate();
    return p;
  }
};

struct TerrainFlags {
  std::string dem;
  std::string texture;
  double z_scale = 1.0;
  std::string diagonal = "fixed";

  void attach(CLI::App& cmd) {
    cmd.add_option("--dem", dem, "ESRI ASCII grid (.asc)")->required();
    cmd.add_option("--texture", texture, "Binary PPM texture (.ppm)")->required();
    cmd.add_option("--z-scale", z_scale, "Vertical exaggeration")->capture_default_str();
    cmd.add_option("--diagonal", diagonal, "Cell split rule")
        ->check(CLI::IsMember({"fixed", "shortest"}))
        ->capture_default_str();
  }

  void check() const {
    if (!(z_scale > 0.0)) throw UsageError("--z-scale must be positive");
  }

  TriMesh build() const {
    const HeightField grid = load_heightfield(dem);
    const TextureImage image = load_texture(texture);
    TerrainOptions options;
    options.z_scale = z_scale;
    options.diagonal = diagonal == "shortest" ? DiagonalRule::Shortest : DiagonalRule::FixedNwSe;
    options.texture_name = fs::path(texture).filename().string();
    TriMesh mesh = generate_terrain_mesh(grid, options);
    if (!drape_check(mesh, image).clean()) throw Error(Errc::InvalidParams, "texture coordinates outside the image");
    return mesh;
  }
};

MeshFormat require_mesh_format(const std::string& path) {
  const auto format = mesh_format_for(path);
  if (!format) throw UsageError("unsupported mesh extension for '" + path + "' (expected .wrl or .obj)");
  return *format;
}

std::uint64_t size_on_disk(const fs::path& path) {
  std::error_code ec;
  const auto size = fs::file_size(path, ec);
  if (ec) throw Error(Errc::Io, "cannot stat " + path.string());
  return size;
}

json stats_json(const MeshStats& s) {
  return {{"size_kb", s.size_kb()}, {"vertices", s.vertex_count}, {"faces", s.face_count}};
}

json decimation_json(const DecimationStats& d) {
  json j;
  j["before"] = stats_json(d.before);
  j["after"] = stats_json(d.after);
  j["reductions_pct"] = {
      {"size", d.size_reduction_pct()}, {"vertices", d.vertex_reduction_pct()}, {"faces", d.face_reduction_pct()}};
  j["survival_pct"] = {
      {"size", d.size_survival_pct()}, {"vertices", d.vertex_survival_pct()}, {"faces", d.face_survival_pct()}};
  j["kb_bytes"] = 1024;
  return j;
}

void print_table(std::ostream& out, const DecimationStats& d) {
  char line[128];
  std::snprintf(line, sizeof line, "%-14s %12s %10s %10s\n", "Dataset", "Sizes (KB)", "Vertices", "Faces");
  out << line;
  std::snprintf(line, sizeof line, "%-14s %12.0f %10llu %10llu\n", "Original", d.before.size_kb(),
                static_cast<unsigned long long>(d.before.vertex_count),
                static_cast<unsigned long long>(d.before.face_count));
  out << line;
  std::snprintf(line, sizeof line, "%-14s %12.0f %10llu %10llu\n", "Compressed", d.after.size_kb(),
                static_cast<unsigned long long>(d.after.vertex_count),
                static_cast<unsigned long long>(d.after.face_count));
  out << line;
  std::snprintf(line, sizeof line, "%-14s %12.2f %10.2f %10.2f\n", "Reduction (%)", d.size_reduction_pct(),
                d.vertex_reduction_pct(), d.face_reduction_pct());
  out << line;
}

void write_report(const std::string& path, const DecimationStats& stats, const SimplifyResult& result) {
  json report = decimation_json(stats);
  report["target_faces"] = result.target_faces;
  report["target_reached"] = result.target_reached;
  write_file(path, report.dump(2) + "\n");
}

// Simplifies `input` (already serialized as `input_bytes`) into `out_path`
// and emits the table and optional report.
int finish_simplify(const TriMesh& input, std::uint64_t input_bytes, const SimplifyParams& params,
                    const std::string& out_path, const std::string& report_path, std::ostream& out) {
  const SimplifyResult result = simplify(input, params);
  const std::uint64_t output_bytes = save_mesh(out_path, result.mesh);
  const DecimationStats stats =
      decimation_stats(mesh_stats(input, input_bytes), mesh_stats(result.mesh, output_bytes));
  print_table(out, stats);
  if (!result.target_reached) {
    out << "note: stopped at " << result.mesh.faces.size() << " faces, target was " << result.target_faces << "\n";
  }
  if (!report_path.empty()) write_report(report_path, stats, result);
  return kSuccess;
}

struct Commands {
  // generate
  TerrainFlags generate_terrain;
  std::string generate_out;
  // simplify
  std::string simplify_in, simplify_out, simplify_report;
  SimplifyFlags simplify_flags;
  // convert
  std::string convert_in, convert_out;
  // stats
  std::string stats_in, stats_baseline;
  // pipeline
  TerrainFlags pipeline_terrain;
  SimplifyFlags pipeline_flags;
  std::string pipeline_out, pipeline_report;
  // synth
  std::string synth_dem, synth_texture;
  unsigned synth_order = 8;
  double synth_cellsize = 10.0, synth_relief = 300.0, synth_roughness = 0.55;
  std::uint64_t synth_seed = 42;
  std::size_t synth_texture_size = 256;

  int generate(std::ostream& out) {
    generate_terrain.check();
    require_mesh_format(generate_out);
    const TriMesh mesh = generate_terrain.build();
    const std::uint64_t bytes = save_mesh(generate_out, mesh);
    out << "vertices " << mesh.positions.size() << " faces " << mesh.faces.size() << " bytes " << bytes << "\n";
    return kSuccess;
  }

  int run_simplify(std::ostream& out) {
    const SimplifyParams params = simplify_flags.params();
    require_mesh_format(simplify_in);
    require_mesh_format(simplify_out);
    const TriMesh input = load_mesh(simplify_in);
    return finish_simplify(input, size_on_disk(simplify_in), params, simplify_out, simplify_report, out);
  }

  int convert(std::ostream& out) {
    require_mesh_format(convert_in);
    require_mesh_format(convert_out);
    const TriMesh mesh = load_mesh(convert_in);
    const std::uint64_t in_bytes = size_on_disk(convert_in);
    const std::uint64_t out_bytes = save_mesh(convert_out, mesh);
    char delta[64];
    std::snprintf(delta, sizeof delta, "%+.2f%%",
                  -reduction_pct(static_cast<double>(in_bytes), static_cast<double>(out_bytes)));
    out << "input " << convert_in << " " << in_bytes << " bytes\n"
        << "output " << convert_out << " " << out_bytes << " bytes\n"
        << "size delta " << delta << "\n";
    return kSuccess;
  }

  int stats(std::ostream& out) {
    require_mesh_format(stats_in);
    if (!stats_baseline.empty()) require_mesh_format(stats_baseline);
    const TriMesh mesh = load_mesh(stats_in);
    const MeshStats current = mesh_stats(mesh, size_on_disk(stats_in));
    if (stats_baseline.empty()) {
      out << stats_json(current).dump(2) << "\n";
      return kSuccess;
    }
    const TriMesh base = load_mesh(stats_baseline);
    const MeshStats before = mesh_stats(base, size_on_disk(stats_baseline));
    out << decimation_json(decimation_stats(before, current)).dump(2) << "\n";
    return kSuccess;
  }

  int pipeline(std::ostream& out) {
    pipeline_terrain.check();
    const SimplifyParams params = pipeline_flags.params();
    if (mesh_format_for(pipeline_out) != MeshFormat::Obj) throw UsageError("--out must be an .obj path");
    fs::path intermediate = pipeline_out;
    intermediate.replace_extension(".wrl");

    const TriMesh terrain = pipeline_terrain.build();
    save_mesh(intermediate, terrain);
    const TriMesh reloaded = load_mesh(intermediate);
    return finish_simplify(reloaded, size_on_disk(intermediate), params, pipeline_out, pipeline_report, out);
  }

  int synth(std::ostream& out) {
    if (synth_order < 1 || synth_order > 12) throw UsageError("--order must be in [1, 12]");
    if (!(synth_cellsize > 0.0)) throw UsageError("--cellsize must be positive");
    if (synth_texture_size == 0) throw UsageError("--texture-size must be positive");
    const HeightField grid =
        make_fractal_heightfield(synth_order, synth_cellsize, synth_relief, synth_roughness, synth_seed);
    write_file(synth_dem, write_esri_ascii_grid(grid));
    if (!synth_texture.empty()) {
      write_file(synth_texture, write_ppm(make_gradient_texture(synth_texture_size, synth_texture_size)));
    }
    out << "grid " << grid.ncols << "x" << grid.nrows << " cellsize " << grid.cellsize << "\n";
    return kSuccess;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"terramesh: terrain mesh generation, quadric decimation and VRML/OBJ conversion", "terramesh"};
  app.require_subcommand(1);
  Commands c;

  auto* generate = app.add_subcommand("generate", "DEM + texture -> textured terrain mesh (.wrl or .obj)");
  c.generate_terrain.attach(*generate);
  generate->add_option("--out", c.generate_out, "Output mesh (.wrl or .obj)")->required();

  auto* simplify_cmd = app.add_subcommand("simplify", "Quadric edge-collapse decimation");
  simplify_cmd->add_option("--in", c.simplify_in, "Input mesh (.wrl or .obj)")->required();
  simplify_cmd->add_option("--out", c.simplify_out, "Output mesh (.wrl or .obj)")->required();
  simplify_cmd->add_option("--report", c.simplify_report, "JSON report path");
  c.simplify_flags.attach(*simplify_cmd);

  auto* convert = app.add_subcommand("convert", "Convert between .wrl and .obj");
  convert->add_option("--in", c.convert_in, "Input mesh")->required();
  convert->add_option("--out", c.convert_out, "Output mesh")->required();

  auto* stats = app.add_subcommand("stats", "Vertex/face/size accounting, optionally against a baseline");
  stats->add_option("--in", c.stats_in, "Mesh to measure")->required();
  stats->add_option("--baseline", c.stats_baseline, "Mesh treated as the 'before' state");

  auto* pipeline = app.add_subcommand("pipeline", "generate -> VRML -> simplify -> OBJ");
  c.pipeline_terrain.attach(*pipeline);
  c.pipeline_flags.attach(*pipeline);
  pipeline->add_option("--out", c.pipeline_out, "Output .obj (the VRML intermediate is kept beside it)")->required();
  pipeline->add_option("--report", c.pipeline_report, "JSON report path");

  auto* synth = app.add_subcommand("synth", "Write a synthetic fractal DEM and gradient texture");
  synth->add_option("--out-dem", c.synth_dem, "Output .asc")->required();
  synth->add_option("--out-texture", c.synth_texture, "Output .ppm");
  synth->add_option("--order", c.synth_order, "Grid is (2^order + 1) nodes square")->capture_default_str();
  synth->add_option("--cellsize", c.synth_cellsize, "Grid spacing in metres")->capture_default_str();
  synth->add_option("--relief", c.synth_relief, "Initial displacement amplitude in metres")->capture_default_str();
  synth->add_option("--roughness", c.synth_roughness, "Per-octave amplitude factor")->capture_default_str();
  synth->add_option("--seed", c.synth_seed, "Random seed")->capture_default_str();
  synth->add_option("--texture-size", c.synth_texture_size, "Texture edge length in pixels")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (generate->parsed()) return c.generate(out);
    if (simplify_cmd->parsed()) return c.run_simplify(out);
    if (convert->parsed()) return c.convert(out);
    if (stats->parsed()) return c.stats(out);
    if (pipeline->parsed()) return c.pipeline(out);
    if (synth->parsed()) return c.synth(out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InvalidParams || e.code() == Errc::UnknownFormat ? kUsageError : kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsageError;
}

}  // namespace terramesh::cli
