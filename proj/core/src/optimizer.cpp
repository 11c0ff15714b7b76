#include "hexatop/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hexatop {

namespace {

void validate_config(const OptConfig& cfg) {
  if (!(cfg.volfrac > 0.0 && cfg.volfrac < 1.0))
    throw std::invalid_argument("volume fraction must be in (0, 1)");
  if (!(cfg.move > 0.0 && cfg.move <= 1.0))
    throw std::invalid_argument("move limit must be in (0, 1]");
  if (cfg.maxiter < 1) throw std::invalid_argument("maxiter must be at least 1");
  if (!(cfg.lambda_max > cfg.lambda_min) || cfg.lambda_min < 0.0)
    throw std::invalid_argument("invalid Lagrange multiplier interval");
}

PassiveMask normalized_mask(const PassiveMask& mask, std::int64_t nelem) {
  if (mask.marker.size() == 0) return PassiveMask::all_active(nelem);
  if (mask.marker.size() != nelem)
    throw std::invalid_argument("passive mask length does not match element count");
  if ((mask.marker.array() != 0).all())
    throw std::invalid_argument("passive mask leaves no active element");
  return mask;
}

void pin_passive(Eigen::VectorXd& v, const PassiveMask& mask) {
  for (std::int64_t j = 0; j < v.size(); ++j) {
    if (mask.marker[j] > 0) v[j] = 1.0;
    else if (mask.marker[j] < 0) v[j] = 0.0;
  }
}

}  // namespace

OcResult oc_update(const Eigen::VectorXd& x, const Eigen::VectorXd& dc,
                   const Eigen::VectorXd& dv, const OptConfig& cfg, const PassiveMask& mask_in,
                   const std::function<double(const Eigen::VectorXd&)>& volume_measure) {
  validate_config(cfg);
  const std::int64_t n = x.size();
  if (dc.size() != n || dv.size() != n)
    throw std::invalid_argument("oc_update: mismatched vector lengths");
  const PassiveMask mask = normalized_mask(mask_in, n);

  Eigen::VectorXd lo(n), hi(n), ratio(n);
  for (std::int64_t j = 0; j < n; ++j) {
    lo[j] = std::max(0.0, x[j] - cfg.move);
    hi[j] = std::min(1.0, x[j] + cfg.move);
    // Floor the radicand at zero: -dc can pick up tiny positive noise near
    // void elements.
    ratio[j] = std::max(0.0, -dc[j]) / dv[j];
  }

  const auto measure = [&](const Eigen::VectorXd& cand) {
    return volume_measure ? volume_measure(cand) : cand.mean();
  };

  Eigen::VectorXd cand(n);
  const auto candidate = [&](double lambda) -> const Eigen::VectorXd& {
    for (std::int64_t j = 0; j < n; ++j) {
      if (mask.marker[j] > 0) { cand[j] = 1.0; continue; }
      if (mask.marker[j] < 0) { cand[j] = 0.0; continue; }
      // Steep Heaviside continuation can drive both gradients to exact zero,
      // making m infinite or NaN; such elements go to the upper bound, which
      // this comparison form handles without propagating NaN.
      const double m = x[j] * std::sqrt(ratio[j] / lambda);
      cand[j] = (m < hi[j]) ? std::max(m, lo[j]) : hi[j];
    }
    return cand;
  };

  double l1 = cfg.lambda_min;
  double l2 = cfg.lambda_max;
  while ((l2 - l1) > cfg.bisection_tol * (l1 + l2)) {
    const double lmid = 0.5 * (l1 + l2);
    if (!(lmid > l1 && lmid < l2)) break;  // interval has no interior point left
    if (l1 == 0.0 && l2 < 1e-30) break;    // constraint inactive: every lambda is feasible
    if (measure(candidate(lmid)) > cfg.volfrac)
      l1 = lmid;
    else
      l2 = lmid;
  }

  // Take the iterate at the feasible end of the bracket.
  const double lambda = std::max(l2, std::numeric_limits<double>::min());
  candidate(lambda);
  if (measure(cand) > cfg.volfrac + 1e-9)
    throw std::runtime_error("OC bisection failed to meet the volume target; final interval [" +
                             std::to_string(l1) + ", " + std::to_string(l2) + "]");
  return {cand, lambda};
}

RunState run(const HexMesh& mesh, const Eigen::MatrixXd& loads, const Supports& supports,
             const Material& material, const OptConfig& cfg, const ElementStiffness& ke,
             const PassiveMask& mask_in, const ProgressCallback& progress,
             const FieldCallback& on_physical) {
  validate_config(cfg);
  const std::int64_t nelem = mesh.num_elements();
  if (loads.rows() != mesh.num_dofs())
    throw std::invalid_argument("load vector length does not match DOF count");
  const PassiveMask mask = normalized_mask(mask_in, nelem);
  const bool filtered = cfg.filter != FilterMode::none;

  FilterOperator filter;
  if (filtered) filter = build_filter(mesh.centroid_xy(), cfg.rfill);

  // Uniform start at the target fraction; with passive regions the active
  // elements absorb the pinned material so the total still meets the target.
  const std::int64_t nsolid = (mask.marker.array() > 0).count();
  const std::int64_t nactive = (mask.marker.array() == 0).count();
  double x0 = cfg.volfrac;
  if (nactive < nelem)
    x0 = std::clamp((cfg.volfrac * static_cast<double>(nelem) - static_cast<double>(nsolid)) /
                        static_cast<double>(nactive),
                    0.0, 1.0);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(nelem, x0);
  pin_passive(x, mask);

  EquilibriumSolver solver(mesh, ke, supports);
  const Eigen::VectorXd dv0 = volume_sensitivity(mesh, cfg.volfrac);

  RunState state;
  state.beta = cfg.heaviside.beta;
  HeavisideSpec hs = cfg.heaviside;

  Eigen::VectorXd xtilde(nelem), xphys(nelem);
  const auto physical = [&](const Eigen::VectorXd& design) {
    switch (cfg.filter) {
      case FilterMode::none:
      case FilterMode::sens:
        xtilde = design;
        xphys = design;
        break;
      case FilterMode::dens:
        xtilde = filter_density(filter, design);
        xphys = xtilde;
        break;
      case FilterMode::heaviside:
        xtilde = filter_density(filter, design);
        xphys = heaviside_project(xtilde, hs);
        break;
    }
    pin_passive(xphys, mask);
  };

  // Volume measure of a candidate design: the design field itself for
  // none/sens/dens (the density filter preserves volume), the projected
  // physical field for heaviside.
  Eigen::VectorXd meas_buf(nelem);
  const auto constraint_measure = [&](const Eigen::VectorXd& cand) {
    if (cfg.filter != FilterMode::heaviside) return cand.mean();
    meas_buf = heaviside_project(filter_density(filter, cand), hs);
    pin_passive(meas_buf, mask);
    return meas_buf.mean();
  };

  for (int iter = 1; iter <= cfg.maxiter; ++iter) {
    physical(x);
    if (on_physical) on_physical(iter, xphys);
    solver.factorize(xphys, material);
    const Eigen::MatrixXd u = solver.solve(loads);
    state.max_solver_residual = std::max(state.max_solver_residual, solver.last_relative_residual());

    const ComplianceResult comp = compliance_and_sensitivity(mesh, u, xphys, material, ke);
    Eigen::VectorXd dc = comp.dc;
    Eigen::VectorXd dv = dv0;
    if (filtered) {
      auto chained = chain_sensitivities(filter, cfg.filter, x, xtilde, dc, dv, hs, cfg.filter_delta);
      dc = std::move(chained.dc);
      dv = std::move(chained.dv);
    }

    OcResult oc = cfg.filter == FilterMode::heaviside
                      ? oc_update(x, dc, dv, cfg, mask, constraint_measure)
                      : oc_update(x, dc, dv, cfg, mask);
    state.change = (oc.x - x).cwiseAbs().maxCoeff();
    state.lambda = oc.lambda;
    x = std::move(oc.x);

    state.compliance = comp.compliance;
    state.volume = constraint_measure(x);
    state.iterations = iter;

    IterationRecord rec{iter, state.compliance, state.volume, state.change, state.beta};
    state.history.push_back(rec);
    if (progress) progress(rec);

    if (cfg.filter == FilterMode::heaviside && hs.double_every > 0 &&
        iter % hs.double_every == 0 && hs.beta < hs.betamax) {
      hs.beta *= 2.0;
      state.beta = hs.beta;
    }
    if (state.change < cfg.change_tol) break;
  }

  physical(x);
  state.x = std::move(x);
  state.xtilde = xtilde;
  state.xphys = xphys;
  return state;
}

RunState run(const HexMesh& mesh, const Eigen::MatrixXd& loads, const Supports& supports,
             const Material& material, const OptConfig& cfg, const PassiveMask& mask,
             const ProgressCallback& progress, const FieldCallback& on_physical) {
  const ElementStiffness ke =
      element_stiffness(kDefaultPoissonRatio, quadrature(QuadratureLabel::N25), mesh.params().edge);
  return run(mesh, loads, supports, material, cfg, ke, mask, progress, on_physical);
}

}  // namespace hexatop
