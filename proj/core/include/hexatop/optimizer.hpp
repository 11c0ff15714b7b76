#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "hexatop/fea.hpp"
#include "hexatop/filters.hpp"
#include "hexatop/mesh.hpp"

namespace hexatop {

struct OptConfig {
  double volfrac = 0.5;
  double move = 0.2;  // conventional Heaviside value is 0.1
  int maxiter = 200;
  double change_tol = 0.01;
  double lambda_min = 0.0;
  double lambda_max = 1e9;
  /// Relative width (l2-l1)/(l1+l2) at which the Lagrange bisection may stop.
  /// Zero (the default) bisects until the interval has no interior midpoint
  /// left, which pins the volume to machine precision and keeps the iterate
  /// sequence invariant under uniform load scaling.
  double bisection_tol = 0.0;
  FilterMode filter = FilterMode::sens;
  double rfill = 0.0;  // required for any mode except none
  HeavisideSpec heaviside;
  double filter_delta = kSensitivityFilterDelta;
};

/// Per-element state: 0 active, +1 pinned solid, -1 pinned void.
struct PassiveMask {
  Eigen::VectorXi marker;

  static PassiveMask all_active(std::int64_t nelem) {
    return PassiveMask{Eigen::VectorXi::Zero(nelem)};
  }
  bool empty() const { return marker.size() == 0 || (marker.array() == 0).all(); }
};

/// Optimality-criteria step. Candidate densities follow
///   M_j = x_j * sqrt(max(0, -dc_j) / (lambda * dv_j))
/// clamped to [max(0, x_j - move), min(1, x_j + move)]; passive elements stay
/// pinned. lambda is bisected on [lambda_min, lambda_max] so that
/// volume_measure(x_new) meets volfrac; the accepted iterate is taken at the
/// feasible end of the bracket, so its measure never exceeds the target.
/// `volume_measure` defaults to the mean of the candidate vector. Throws
/// std::runtime_error when even lambda_max cannot push the measure down to
/// the target (reports the final interval).
struct OcResult {
  Eigen::VectorXd x;
  double lambda = 0.0;
};
OcResult oc_update(const Eigen::VectorXd& x, const Eigen::VectorXd& dc,
                   const Eigen::VectorXd& dv, const OptConfig& cfg, const PassiveMask& mask,
                   const std::function<double(const Eigen::VectorXd&)>& volume_measure = {});

struct IterationRecord {
  int iter = 0;
  double compliance = 0.0;
  double volume = 0.0;  // mode-appropriate constraint measure of the accepted iterate
  double change = 0.0;
  double beta = 1.0;
};

struct RunState {
  Eigen::VectorXd x;       // design field
  Eigen::VectorXd xtilde;  // filtered field (equals x unless a density filter ran)
  Eigen::VectorXd xphys;   // physical field driving the stiffness
  int iterations = 0;
  double compliance = 0.0;
  double volume = 0.0;
  double change = 0.0;
  double beta = 1.0;
  double lambda = 0.0;
  double max_solver_residual = 0.0;
  std::vector<IterationRecord> history;
};

using ProgressCallback = std::function<void(const IterationRecord&)>;
/// Receives the physical density field as each iteration's equilibrium
/// problem sees it (after filtering, projection and passive pinning).
using FieldCallback = std::function<void(int iter, const Eigen::VectorXd& xphys)>;

/// Full optimization loop. Per iteration: physical field from the filter
/// mode, passive pinning, equilibrium solve, compliance and sensitivities,
/// chain rule, OC update, Heaviside continuation. Stops at change <
/// change_tol or maxiter. The per-iteration compliance is the value for the
/// design entering the iteration; volume and change describe the accepted
/// update, matching the usual printout convention of this code family.
RunState run(const HexMesh& mesh, const Eigen::MatrixXd& loads, const Supports& supports,
             const Material& material, const OptConfig& cfg,
             const PassiveMask& mask = PassiveMask{}, const ProgressCallback& progress = {},
             const FieldCallback& on_physical = {});

/// Same, with an explicit element stiffness (e.g. a different quadrature
/// rule or Poisson ratio).
RunState run(const HexMesh& mesh, const Eigen::MatrixXd& loads, const Supports& supports,
             const Material& material, const OptConfig& cfg, const ElementStiffness& ke,
             const PassiveMask& mask = PassiveMask{}, const ProgressCallback& progress = {},
             const FieldCallback& on_physical = {});

}  // namespace hexatop
