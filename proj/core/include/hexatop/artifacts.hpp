#pragma once

#include <filesystem>
#include <string>

#include "hexatop/mesh.hpp"
#include "hexatop/optimizer.hpp"
#include "hexatop/problems.hpp"

namespace hexatop {

/// Everything a run leaves behind in its output directory:
///   densities.csv  one physical density per line, element order
///   history.jsonl  one JSON object per iteration (iter, compliance,
///                  volume, change, beta)
///   design.svg     rendered density field
///   nodes.csv, elements.csv   mesh export
///   summary.json   final compliance, iteration count, wall time and the
///                  echoed configuration
/// densities.csv and history.jsonl depend only on the run inputs, so
/// identical runs reproduce them byte for byte.
struct RunArtifacts {
  std::filesystem::path out_dir;
};

void write_artifacts(const RunArtifacts& artifacts, const HexMesh& mesh, const ProblemSpec& spec,
                     const OptConfig& cfg, const RunState& state, double wall_time_seconds);

const char* to_string(FilterMode mode);
FilterMode filter_mode_from_string(const std::string& name);

}  // namespace hexatop
