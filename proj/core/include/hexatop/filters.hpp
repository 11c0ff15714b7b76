#pragma once

#include <Eigen/Core>
#include <Eigen/Sparse>

#include <optional>
#include <span>

namespace hexatop {

inline constexpr double kSensitivityFilterDelta = 1e-3;

enum class FilterMode { none, sens, dens, heaviside };

/// Linearly decaying neighborhood weights over element centroids:
/// H_ij = max(0, 1 - |x_i - x_j| / rfill), zero at and beyond rfill.
/// `rownorm` is H with every row divided by its row sum, so rownorm * 1 = 1.
struct FilterOperator {
  double rfill = 0.0;
  Eigen::SparseMatrix<double> weights;  // H, symmetric, unit diagonal
  Eigen::SparseMatrix<double> rownorm;  // Hs
  Eigen::VectorXd row_sums;             // of H
};

/// Builds the operator from interleaved (x, y) centroids. Neighbor search
/// buckets centroids into a uniform grid of cell size rfill, so construction
/// is O(n * neighbors) rather than all-pairs.
FilterOperator build_filter(std::span<const double> centroid_xy, double rfill);

/// Density filter: xtilde = Hs * x. Fixes constant vectors.
Eigen::VectorXd filter_density(const FilterOperator& op, const Eigen::VectorXd& x);

/// Sensitivity filter: dcbar_j = sum_i H_ij x_i dc_i / (max(delta, x_j) * sum_i H_ij).
Eigen::VectorXd filter_sensitivity(const FilterOperator& op, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& dc,
                                   double delta = kSensitivityFilterDelta);

/// Smoothed Heaviside projection with threshold eta and steepness beta;
/// beta doubles every `double_every` iterations up to betamax.
struct HeavisideSpec {
  double beta = 1.0;
  double eta = 0.5;
  double betamax = 128.0;
  int double_every = 60;
};

/// rhobar = (tanh(beta eta) + tanh(beta (rhotilde - eta))) /
///          (tanh(beta eta) + tanh(beta (1 - eta))); maps [0,1] onto [0,1].
double heaviside_project(double xtilde, const HeavisideSpec& spec);
Eigen::VectorXd heaviside_project(const Eigen::VectorXd& xtilde, const HeavisideSpec& spec);

/// d(rhobar)/d(rhotilde) = beta (1 - tanh^2(beta (rhotilde - eta))) /
///                         (tanh(beta eta) + tanh(beta (1 - eta))); positive.
double heaviside_derivative(double xtilde, const HeavisideSpec& spec);
Eigen::VectorXd heaviside_derivative(const Eigen::VectorXd& xtilde, const HeavisideSpec& spec);

/// Chain rule from physical back to design space for both gradients.
///   none:      unchanged
///   sens:      dc <- filter_sensitivity(x, dc), dv unchanged
///   dens:      dc <- Hs^T dc, dv <- Hs^T dv
///   heaviside: dc <- Hs^T (dc .* dH(xtilde)), same for dv
/// `x` is the design field (sens mode), `xtilde` the filtered field
/// (heaviside mode). Throws std::invalid_argument if heaviside mode is
/// requested without a spec.
struct ChainedSensitivities {
  Eigen::VectorXd dc;
  Eigen::VectorXd dv;
};
ChainedSensitivities chain_sensitivities(const FilterOperator& op, FilterMode mode,
                                         const Eigen::VectorXd& x, const Eigen::VectorXd& xtilde,
                                         const Eigen::VectorXd& dc, const Eigen::VectorXd& dv,
                                         const std::optional<HeavisideSpec>& spec = std::nullopt,
                                         double delta = kSensitivityFilterDelta);

}  // namespace hexatop
