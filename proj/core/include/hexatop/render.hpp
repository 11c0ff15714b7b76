#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <string>

#include "hexatop/mesh.hpp"

namespace hexatop {

/// SVG of the density field: one polygon per element, filled with the gray
/// level 1 - rho (solid renders black). Gray values quantize to 8 bits per
/// channel, rounding half up, so repeated renders are byte-identical. The
/// viewBox fits the mesh bounds with a 1% margin; y is flipped into SVG's
/// downward axis.
std::string render_svg(const HexMesh& mesh, const Eigen::VectorXd& xphys);

/// Same, written to `path`. Throws std::runtime_error naming the path on
/// I/O failure.
void render_svg(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                const std::filesystem::path& path);

}  // namespace hexatop
