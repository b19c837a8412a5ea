// cwf: generate, measure and fair triangle meshes with the circle-angle
// functionals, and analyze mesh graphs with the quadratic-program theory.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwf/cwf.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitDegenerated = 3;
constexpr int kExitStalled = 4;

cwf::EnergyKind parse_kind(const std::string& name) {
  if (name == "W" || name == "w") return cwf::EnergyKind::W;
  if (name == "W2" || name == "w2") return cwf::EnergyKind::W2;
  if (name == "W2w" || name == "w2w") return cwf::EnergyKind::W2w;
  throw CLI::ValidationError("--functional", "expected W, W2 or W2w");
}

void print_report(const cwf::DiagnosticsReport& rep, const std::string& format) {
  if (format == "json") {
    std::cout << cwf::to_json(rep).dump(2) << '\n';
  } else {
    cwf::write_text(std::cout, rep);
  }
}

struct CommonMeshInput {
  cwf::TriangleMesh mesh;
  cwf::MeshTopology topo;
  std::optional<cwf::GraphData> graph;  // only for closed meshes
};

CommonMeshInput load_mesh_input(const std::string& path) {
  CommonMeshInput in;
  in.mesh = cwf::load_obj(path);
  in.topo = cwf::build_topology(in.mesh);
  if (in.topo.closed()) in.graph = cwf::incidence_and_weights(in.topo);
  return in;
}

int run_generate(const std::string& kind, const std::string& out_path, double R, double r,
                 int m, int n, int count, std::uint64_t seed,
                 const std::vector<double>& semiaxes) {
  cwf::TriangleMesh mesh;
  if (kind == "tetra") mesh = cwf::make_tetrahedron();
  else if (kind == "octa") mesh = cwf::make_octahedron();
  else if (kind == "icosa") mesh = cwf::make_icosahedron();
  else if (kind == "torus") mesh = cwf::generate_torus(R, r, m, n);
  else if (kind == "ellipsoid") {
    if (semiaxes.size() != 3)
      throw CLI::ValidationError("--semiaxes", "expected three values");
    mesh = cwf::generate_random_inscribed(
        count, {semiaxes[0], semiaxes[1], semiaxes[2]}, seed);
    std::cout << "seed " << seed << '\n';
  } else {
    throw CLI::ValidationError("kind", "expected tetra, octa, icosa, torus or ellipsoid");
  }
  cwf::save_obj(mesh, out_path);
  const cwf::MeshTopology topo = cwf::build_topology(mesh);
  std::cout << "vertices " << topo.vertex_count << "\nedges " << topo.edge_count()
            << "\nfaces " << topo.face_count << "\neuler "
            << topo.euler_characteristic << '\n';
  return kExitOk;
}

int run_energy(const std::string& path, const std::string& functional) {
  const cwf::EnergyKind kind = parse_kind(functional);
  const CommonMeshInput in = load_mesh_input(path);
  if (!in.topo.closed() && kind != cwf::EnergyKind::W)
    std::cout << "warning: mesh has boundary, no normalization constant defined\n";
  const cwf::GraphData* graph = in.graph ? &*in.graph : nullptr;
  const cwf::EnergyValue value =
      cwf::evaluate_energy(in.mesh.positions, in.topo, kind, graph);
  const std::vector<double> betas = cwf::angle_vector(in.mesh.positions, in.topo);
  const auto [lo, hi] = std::minmax_element(betas.begin(), betas.end());
  std::printf("%s = %.12g\n", cwf::to_string(kind), value.value);
  if (value.constant) std::printf("constant = %.12g\n", *value.constant);
  if (!betas.empty()) std::printf("beta_min = %.12g\nbeta_max = %.12g\n", *lo, *hi);
  return kExitOk;
}

int run_minimize(const std::string& path, const std::string& functional, int steps,
                 double gtol, double threshold, int history, bool fix_boundary,
                 const std::string& out_path, const std::string& trace_path,
                 const std::string& angles_path, const std::string& format) {
  CommonMeshInput in = load_mesh_input(path);
  cwf::OptimizationConfig config;
  config.kind = parse_kind(functional);
  config.max_steps = steps;
  config.gradient_tolerance = gtol;
  config.w_threshold = threshold;
  config.history_size = history;
  if (fix_boundary) config.fixed_vertices = cwf::fix_boundary_collar(in.topo);

  const cwf::GraphData* graph = in.graph ? &*in.graph : nullptr;
  const cwf::MinimizeResult result = cwf::minimize(in.mesh, in.topo, graph, config);

  if (!out_path.empty()) cwf::save_obj(result.mesh, out_path);
  if (!trace_path.empty()) {
    std::ofstream trace(trace_path);
    if (!trace) throw cwf::ObjError("cannot write '" + trace_path + "'");
    cwf::write_trace_csv(trace, result.trace);
  }
  if (!angles_path.empty()) {
    std::ofstream angles(angles_path);
    if (!angles) throw cwf::ObjError("cannot write '" + angles_path + "'");
    cwf::dump_angles_csv(angles, in.topo,
                         cwf::angle_vector(result.mesh.positions, in.topo));
  }

  std::cout << "status " << cwf::to_string(result.status) << "\nsteps "
            << result.steps << '\n';
  std::printf("energy %.12g\ngrad_norm %.12g\n", result.final_energy,
              result.final_gradient_norm);
  if (!result.collapsed_edges.empty()) {
    std::cout << "collapsed_edges";
    for (int e : result.collapsed_edges) {
      const cwf::EdgeRecord& rec = in.topo.edges[e];
      std::cout << " (" << rec.i << ',' << rec.j << ')';
    }
    std::cout << '\n';
  }
  cwf::DiagnosticsReport rep = cwf::report(result.mesh, in.topo, graph);
  print_report(rep, format);

  switch (result.status) {
    case cwf::OptStatus::Converged:
    case cwf::OptStatus::StepLimit: return kExitOk;
    case cwf::OptStatus::Degenerated: return kExitDegenerated;
    default: return kExitStalled;
  }
}

int run_analyze(const std::string& path, bool weighted, const std::string& format,
                const std::string& angles_csv) {
  const CommonMeshInput in = load_mesh_input(path);
  if (!in.topo.closed() || in.topo.euler_characteristic != 2) {
    std::cerr << "error: graph analysis applies to closed genus-0 meshes "
                 "(simplicial polyhedra); this mesh is unsupported\n";
    return kExitInputError;
  }
  const cwf::QPReport rep = cwf::check_realizability(in.topo, *in.graph, weighted);
  if (format == "json") std::cout << cwf::to_json(rep).dump(2) << '\n';
  else cwf::write_text(std::cout, rep);
  if (!angles_csv.empty()) {
    std::ofstream out(angles_csv);
    if (!out) throw cwf::ObjError("cannot write '" + angles_csv + "'");
    cwf::write_angles_over_pi_csv(out, rep.angles);
  }
  return kExitOk;
}

int run_diagnose(const std::string& path, const std::string& format, int torus_m,
                 int torus_n) {
  const CommonMeshInput in = load_mesh_input(path);
  const cwf::GraphData* graph = in.graph ? &*in.graph : nullptr;
  cwf::DiagnosticsReport rep = cwf::report(in.mesh, in.topo, graph);
  if (torus_m > 0 && torus_n > 0)
    rep.torus_ratio = cwf::torus_radii_ratio(in.mesh, torus_m, torus_n);
  print_report(rep, format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circle-angle Willmore functionals on simplicial surfaces"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a generated mesh as OBJ");
  std::string gen_kind;
  gen->add_option("kind", gen_kind, "tetra | octa | icosa | torus | ellipsoid")
      ->required();
  std::string gen_out = "mesh.obj";
  double gen_R = 2.0, gen_r = 1.0;
  int gen_m = 16, gen_n = 16, gen_count = 50;
  std::uint64_t gen_seed = 1;
  std::vector<double> gen_semiaxes = {1.0, 1.0, 2.0};
  gen->add_option("--out", gen_out, "output OBJ path");
  gen->add_option("--R", gen_R, "torus major radius");
  gen->add_option("--r", gen_r, "torus minor radius");
  gen->add_option("--m", gen_m, "torus major count");
  gen->add_option("--n", gen_n, "torus minor count");
  gen->add_option("--count", gen_count, "ellipsoid sample count");
  gen->add_option("--seed", gen_seed, "ellipsoid random seed");
  gen->add_option("--semiaxes", gen_semiaxes, "ellipsoid semiaxes")->expected(3);

  // energy
  auto* en = app.add_subcommand("energy", "evaluate an energy on a mesh");
  std::string en_path, en_functional = "W2";
  en->add_option("mesh", en_path, "input OBJ")->required();
  en->add_option("--functional", en_functional, "W | W2 | W2w");

  // minimize
  auto* mi = app.add_subcommand("minimize", "minimize an energy over vertex positions");
  std::string mi_path, mi_functional = "W2", mi_out, mi_trace, mi_angles;
  std::string mi_format = "text";
  int mi_steps = 4000, mi_history = 8;
  double mi_gtol = 1e-10, mi_threshold = cwf::kDefaultWThreshold;
  bool mi_fix_boundary = false;
  mi->add_option("mesh", mi_path, "input OBJ")->required();
  mi->add_option("--functional", mi_functional, "W | W2 | W2w");
  mi->add_option("--steps", mi_steps, "maximum quasi-Newton steps");
  mi->add_option("--gtol", mi_gtol, "gradient norm tolerance");
  mi->add_option("--threshold", mi_threshold, "gradient threshold for W (radians)");
  mi->add_option("--history", mi_history, "quasi-Newton history size");
  mi->add_flag("--fix-boundary", mi_fix_boundary, "fix the boundary collar");
  mi->add_option("--out", mi_out, "optimized OBJ path");
  mi->add_option("--trace", mi_trace, "trace CSV path");
  mi->add_option("--dump-angles", mi_angles, "final angle vector CSV path");
  mi->add_option("--format", mi_format, "report format: text | json");

  // analyze-graph
  auto* an = app.add_subcommand("analyze-graph",
                                "quadratic-program analysis of the mesh graph");
  std::string an_path, an_format = "text", an_csv;
  bool an_weighted = false;
  an->add_option("mesh", an_path, "input OBJ")->required();
  an->add_flag("--weighted", an_weighted, "use the valence-weighted program");
  an->add_option("--format", an_format, "text | json");
  an->add_option("--angles-csv", an_csv, "write sorted angles/pi as CSV");

  // diagnose
  auto* di = app.add_subcommand("diagnose", "geometric verdicts for a mesh");
  std::string di_path, di_format = "text";
  int di_m = 0, di_n = 0;
  di->add_option("mesh", di_path, "input OBJ")->required();
  di->add_option("--format", di_format, "text | json");
  di->add_option("--torus-m", di_m, "torus grid major count (enables ratio)");
  di->add_option("--torus-n", di_n, "torus grid minor count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_generate(gen_kind, gen_out, gen_R, gen_r, gen_m, gen_n, gen_count,
                          gen_seed, gen_semiaxes);
    if (en->parsed()) return run_energy(en_path, en_functional);
    if (mi->parsed())
      return run_minimize(mi_path, mi_functional, mi_steps, mi_gtol, mi_threshold,
                          mi_history, mi_fix_boundary, mi_out, mi_trace, mi_angles,
                          mi_format);
    if (an->parsed()) return run_analyze(an_path, an_weighted, an_format, an_csv);
    if (di->parsed()) return run_diagnose(di_path, di_format, di_m, di_n);
  } catch (const CLI::ValidationError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
