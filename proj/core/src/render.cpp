#include "hexatop/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hexatop {

std::string render_svg(const HexMesh& mesh, const Eigen::VectorXd& xphys) {
  if (xphys.size() != mesh.num_elements())
    throw std::invalid_argument("density vector length does not match element count");

  double xmin = mesh.node_x(0), xmax = xmin, ymin = mesh.node_y(0), ymax = ymin;
  for (std::int64_t n = 0; n < mesh.num_nodes(); ++n) {
    xmin = std::min(xmin, mesh.node_x(n));
    xmax = std::max(xmax, mesh.node_x(n));
    ymin = std::min(ymin, mesh.node_y(n));
    ymax = std::max(ymax, mesh.node_y(n));
  }
  const double w = xmax - xmin;
  const double h = ymax - ymin;
  const double margin = 0.01 * std::max(w, h);

  char buf[256];
  std::string svg;
  svg.reserve(static_cast<std::size_t>(mesh.num_elements()) * 160 + 256);
  std::snprintf(buf, sizeof(buf),
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                "<svg xmlns=\"http://www.w3.org/2000/svg\" "
                "viewBox=\"%.6f %.6f %.6f %.6f\">\n",
                xmin - margin, -margin, w + 2 * margin, h + 2 * margin);
  svg += buf;

  const double stroke = 0.02 * std::max(w, h) / std::max(mesh.params().hnex, mesh.params().hney);
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const double gray = std::clamp(1.0 - xphys[e], 0.0, 1.0);
    const int level = static_cast<int>(std::floor(gray * 255.0 + 0.5));
    svg += "<polygon points=\"";
    for (std::int32_t n : mesh.nodes_of(e)) {
      std::snprintf(buf, sizeof(buf), "%.6f,%.6f ", mesh.node_x(n), ymax - mesh.node_y(n));
      svg += buf;
    }
    if (svg.back() == ' ') svg.pop_back();
    std::snprintf(buf, sizeof(buf),
                  "\" fill=\"#%02x%02x%02x\" stroke=\"#%02x%02x%02x\" stroke-width=\"%.6f\"/>\n",
                  level, level, level, level, level, level, stroke);
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

void render_svg(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << render_svg(mesh, xphys);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace hexatop
