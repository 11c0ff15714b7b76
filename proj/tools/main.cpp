// Command-line driver: runs a preset or configured compliance-minimization
// problem on a honeycomb mesh and writes densities, convergence history,
// mesh files and an SVG rendering of the result.

#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hexatop/artifacts.hpp"
#include "hexatop/config.hpp"
#include "hexatop/optimizer.hpp"
#include "hexatop/problems.hpp"

int main(int argc, char** argv) {
  using namespace hexatop;

  CLI::App app{"Topology optimization on regular-hexagon meshes"};
  app.get_formatter()->column_width(34);

  std::string problem;
  std::string config_path;
  std::string filter_name;
  std::string out_dir = "./out";
  int nex = 0, ney = 0, max_iter = 0;
  double volfrac = 0.0, penal = 0.0, rfill = 0.0, move = 0.0, tol = -1.0, edge = 0.0;
  bool quiet = false;
  bool seedless = false;

  auto* popt = app.add_option("--problem", problem, "Preset problem")
                   ->check(CLI::IsMember({"mbb", "michell", "cantilever2", "passive-cantilever"}));
  auto* copt = app.add_option("--config", config_path, "Problem config JSON");
  popt->excludes(copt);
  copt->excludes(popt);

  app.add_option("--nex", nex, "Hexagons per row");
  app.add_option("--ney", ney, "Hexagon rows");
  app.add_option("--volfrac", volfrac, "Target volume fraction");
  app.add_option("--penal", penal, "SIMP penalization exponent");
  app.add_option("--rfill", rfill, "Filter radius, in multiples of the hexagon edge");
  app.add_option("--filter", filter_name, "Filter scheme")
      ->check(CLI::IsMember({"none", "sens", "dens", "heaviside"}));
  app.add_option("--max-iter", max_iter, "Iteration cap");
  auto* mopt = app.add_option("--move", move, "OC move limit");
  app.add_option("--tol", tol, "Stop when max density change drops below this");
  app.add_option("--edge", edge, "Hexagon edge length");
  app.add_option("--out", out_dir, "Output directory (created if missing)");
  app.add_flag("--quiet", quiet, "Suppress per-iteration output");
  app.add_flag("--seedless", seedless,
               "Accepted for compatibility; runs are deterministic regardless");

  CLI11_PARSE(app, argc, argv);

  try {
    ProblemSpec spec;
    if (!config_path.empty())
      spec = load_problem_config(config_path);
    else
      spec = preset_problem(problem.empty() ? std::string("mbb") : problem);

    if (nex > 0) spec.mesh.hnex = nex;
    if (ney > 0) spec.mesh.hney = ney;
    if (edge > 0.0) spec.mesh.edge = edge;
    if (volfrac > 0.0) spec.volfrac = volfrac;
    if (penal > 0.0) spec.penal = penal;
    if (rfill > 0.0) spec.rfill = rfill;
    if (!filter_name.empty()) spec.filter = filter_mode_from_string(filter_name);
    if (max_iter > 0) spec.maxiter = max_iter;
    if (mopt->count() > 0) spec.move = move;
    else if (spec.filter == FilterMode::heaviside) spec.move = 0.1;

    OptConfig cfg;
    cfg.volfrac = spec.volfrac;
    cfg.move = spec.move;
    cfg.maxiter = spec.maxiter;
    if (tol >= 0.0) cfg.change_tol = tol;
    cfg.filter = spec.filter;
    cfg.rfill = spec.filter_radius();

    const HexMesh mesh = build_mesh(spec.mesh);
    const ResolvedProblem rp = resolve(spec, mesh);

    Material material;
    material.penal = spec.penal;

    const auto t0 = std::chrono::steady_clock::now();
    const RunState state =
        hexatop::run(mesh, rp.loads, rp.supports, material, cfg, rp.mask,
                     [&](const IterationRecord& rec) {
                       if (!quiet)
                         std::printf("it: %d obj: %.4f vol: %.4f ch: %.4f\n", rec.iter,
                                     rec.compliance, rec.volume, rec.change);
                     });
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    write_artifacts({out_dir}, mesh, spec, cfg, state, seconds);
    if (!quiet)
      std::printf("done: %d iterations, compliance %.6f, artifacts in %s\n", state.iterations,
                  state.compliance, out_dir.c_str());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
