#include "hexatop/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "hexatop/render.hpp"

namespace hexatop {

namespace {

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

const char* to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::none: return "none";
    case FilterMode::sens: return "sens";
    case FilterMode::dens: return "dens";
    case FilterMode::heaviside: return "heaviside";
  }
  return "?";
}

FilterMode filter_mode_from_string(const std::string& name) {
  if (name == "none") return FilterMode::none;
  if (name == "sens") return FilterMode::sens;
  if (name == "dens") return FilterMode::dens;
  if (name == "heaviside") return FilterMode::heaviside;
  throw std::invalid_argument("unknown filter mode: " + name);
}

void write_artifacts(const RunArtifacts& artifacts, const HexMesh& mesh, const ProblemSpec& spec,
                     const OptConfig& cfg, const RunState& state, double wall_time_seconds) {
  const auto& dir = artifacts.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  char buf[64];
  std::string densities;
  densities.reserve(static_cast<std::size_t>(state.xphys.size()) * 20);
  for (std::int64_t e = 0; e < state.xphys.size(); ++e) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", state.xphys[e]);
    densities += buf;
  }
  write_text(dir / "densities.csv", densities);

  std::string history;
  history.reserve(state.history.size() * 96);
  for (const auto& rec : state.history) {
    nlohmann::ordered_json line = {{"iter", rec.iter},
                                   {"compliance", rec.compliance},
                                   {"volume", rec.volume},
                                   {"change", rec.change},
                                   {"beta", rec.beta}};
    history += line.dump();
    history += '\n';
  }
  write_text(dir / "history.jsonl", history);

  render_svg(mesh, state.xphys, dir / "design.svg");
  export_mesh(mesh, dir);

  nlohmann::ordered_json summary = {
      {"compliance", state.compliance},
      {"iterations", state.iterations},
      {"wall_time_s", wall_time_seconds},
      {"config",
       {{"problem", spec.name},
        {"hnex", mesh.params().hnex},
        {"hney", mesh.params().hney},
        {"edge", mesh.params().edge},
        {"volfrac", cfg.volfrac},
        {"penal", spec.penal},
        {"rfill", cfg.rfill},
        {"filter", to_string(cfg.filter)},
        {"maxiter", cfg.maxiter},
        {"move", cfg.move},
        {"change_tol", cfg.change_tol}}}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace hexatop
