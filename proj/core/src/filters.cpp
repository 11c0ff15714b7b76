#include "hexatop/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hexatop {

FilterOperator build_filter(std::span<const double> centroid_xy, double rfill) {
  if (!(rfill > 0.0)) throw std::invalid_argument("filter radius must be positive");
  if (centroid_xy.size() % 2 != 0) throw std::invalid_argument("centroid array must be (x,y) pairs");
  const std::int64_t n = static_cast<std::int64_t>(centroid_xy.size() / 2);
  if (n == 0) throw std::invalid_argument("empty centroid array");

  double xmin = centroid_xy[0], xmax = centroid_xy[0];
  double ymin = centroid_xy[1], ymax = centroid_xy[1];
  for (std::int64_t i = 0; i < n; ++i) {
    xmin = std::min(xmin, centroid_xy[2 * i]);
    xmax = std::max(xmax, centroid_xy[2 * i]);
    ymin = std::min(ymin, centroid_xy[2 * i + 1]);
    ymax = std::max(ymax, centroid_xy[2 * i + 1]);
  }
  const auto cell_of = [&](double v, double lo) {
    return static_cast<std::int64_t>(std::floor((v - lo) / rfill));
  };
  const std::int64_t ncx = cell_of(xmax, xmin) + 1;
  const std::int64_t ncy = cell_of(ymax, ymin) + 1;

  std::vector<std::vector<std::int32_t>> buckets(static_cast<std::size_t>(ncx * ncy));
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t cx = cell_of(centroid_xy[2 * i], xmin);
    const std::int64_t cy = cell_of(centroid_xy[2 * i + 1], ymin);
    buckets[static_cast<std::size_t>(cy * ncx + cx)].push_back(static_cast<std::int32_t>(i));
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * 8);
  const double r2 = rfill * rfill;
  for (std::int64_t j = 0; j < n; ++j) {
    const double xj = centroid_xy[2 * j];
    const double yj = centroid_xy[2 * j + 1];
    const std::int64_t cx = cell_of(xj, xmin);
    const std::int64_t cy = cell_of(yj, ymin);
    for (std::int64_t by = std::max<std::int64_t>(0, cy - 1); by <= std::min(ncy - 1, cy + 1); ++by) {
      for (std::int64_t bx = std::max<std::int64_t>(0, cx - 1); bx <= std::min(ncx - 1, cx + 1); ++bx) {
        for (std::int32_t i : buckets[static_cast<std::size_t>(by * ncx + bx)]) {
          const double dx = centroid_xy[2 * i] - xj;
          const double dy = centroid_xy[2 * i + 1] - yj;
          const double d2 = dx * dx + dy * dy;
          if (d2 < r2) trips.emplace_back(i, j, 1.0 - std::sqrt(d2) / rfill);
        }
      }
    }
  }

  FilterOperator op;
  op.rfill = rfill;
  op.weights.resize(n, n);
  op.weights.setFromTriplets(trips.begin(), trips.end());
  op.weights.makeCompressed();

  // Row sums equal column sums by symmetry.
  op.row_sums = Eigen::VectorXd::Zero(n);
  for (int col = 0; col < op.weights.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.weights, col); it; ++it)
      op.row_sums[col] += it.value();

  op.rownorm = op.weights;
  for (int col = 0; col < op.rownorm.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.rownorm, col); it; ++it)
      it.valueRef() /= op.row_sums[it.row()];
  return op;
}

Eigen::VectorXd filter_density(const FilterOperator& op, const Eigen::VectorXd& x) {
  return op.rownorm * x;
}

Eigen::VectorXd filter_sensitivity(const FilterOperator& op, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& dc, double delta) {
  Eigen::VectorXd num = op.weights * (x.array() * dc.array()).matrix();
  return num.array() / (x.array().max(delta) * op.row_sums.array());
}

double heaviside_project(double xtilde, const HeavisideSpec& s) {
  const double den = std::tanh(s.beta * s.eta) + std::tanh(s.beta * (1.0 - s.eta));
  return (std::tanh(s.beta * s.eta) + std::tanh(s.beta * (xtilde - s.eta))) / den;
}

Eigen::VectorXd heaviside_project(const Eigen::VectorXd& xtilde, const HeavisideSpec& s) {
  const double t0 = std::tanh(s.beta * s.eta);
  const double den = t0 + std::tanh(s.beta * (1.0 - s.eta));
  return ((s.beta * (xtilde.array() - s.eta)).tanh() + t0) / den;
}

double heaviside_derivative(double xtilde, const HeavisideSpec& s) {
  const double den = std::tanh(s.beta * s.eta) + std::tanh(s.beta * (1.0 - s.eta));
  const double t = std::tanh(s.beta * (xtilde - s.eta));
  return s.beta * (1.0 - t * t) / den;
}

Eigen::VectorXd heaviside_derivative(const Eigen::VectorXd& xtilde, const HeavisideSpec& s) {
  const double den = std::tanh(s.beta * s.eta) + std::tanh(s.beta * (1.0 - s.eta));
  Eigen::ArrayXd t = (s.beta * (xtilde.array() - s.eta)).tanh();
  return (s.beta * (1.0 - t.square()) / den).matrix();
}

ChainedSensitivities chain_sensitivities(const FilterOperator& op, FilterMode mode,
                                         const Eigen::VectorXd& x, const Eigen::VectorXd& xtilde,
                                         const Eigen::VectorXd& dc, const Eigen::VectorXd& dv,
                                         const std::optional<HeavisideSpec>& spec, double delta) {
  switch (mode) {
    case FilterMode::none:
      return {dc, dv};
    case FilterMode::sens:
      return {filter_sensitivity(op, x, dc, delta), dv};
    case FilterMode::dens:
      return {op.rownorm.transpose() * dc, op.rownorm.transpose() * dv};
    case FilterMode::heaviside: {
      if (!spec) throw std::invalid_argument("heaviside chain rule needs a HeavisideSpec");
      const Eigen::VectorXd dh = heaviside_derivative(xtilde, *spec);
      return {op.rownorm.transpose() * (dc.array() * dh.array()).matrix(),
              op.rownorm.transpose() * (dv.array() * dh.array()).matrix()};
    }
  }
  throw std::invalid_argument("unknown filter mode");
}

}  // namespace hexatop
