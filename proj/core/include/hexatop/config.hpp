#pragma once

#include <filesystem>

#include "hexatop/problems.hpp"

namespace hexatop {

/// Loads a problem description from JSON. Either
///   {"problem": "mbb", ...overrides...}
/// starting from a preset, or a custom setup
///   {"problem": "custom", "hnex": ..., "hney": ..., "loads": [...],
///    "supports": [...], ...}
/// Recognized scalar keys: hnex, hney, edge, volfrac, penal, rfill, filter,
/// maxiter, move. Loads are {"x","y","dir","mag","case"} (nearest node);
/// supports are {"edge": "left|right|bottom|top", "dir": "x|y|both"} or
/// {"x","y","dir"}; passive entries are {"shape": "circle"|"rect",
/// "params": {...}, "marker": 1|-1, "frac": bool} with circle params
/// {cx, cy, r} and rect params {x0, x1, y0, y1}.
ProblemSpec load_problem_config(const std::filesystem::path& path);

}  // namespace hexatop
