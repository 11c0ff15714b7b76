#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace hexatop {

inline constexpr double kDefaultEdge = 0.57735026918962576;  // 1/sqrt(3)
inline constexpr double kCos30 = 0.86602540378443865;

/// Size and scale of a honeycomb tessellation: `hnex` hexagons per even
/// element row, `hney` element rows stacked in y, edge length `edge`.
struct MeshParams {
  int hnex = 1;
  int hney = 1;
  double edge = kDefaultEdge;
};

struct MeshCounts {
  std::int64_t nelem = 0;
  std::int64_t nnode = 0;
};

/// Closed-form element/node counts:
///   nelem = hnex*ceil(hney/2) + (hnex-1)*floor(hney/2)
///   nnode = (2*hnex+1)*(hney+1), minus 2 when hney is even (the two top
///           corner nodes are never referenced and get removed).
/// Throws std::invalid_argument on non-positive dimensions or edge.
MeshCounts mesh_counts(const MeshParams& params);

/// Regular-hexagon tessellation of a rectangular strip.
///
/// Node layout before hanging-node removal: node rows r = 0..hney, each with
/// 2*hnex+1 nodes at x = j*edge*cos(30deg); y alternates a quarter edge up or
/// down, y = edge*(1.5*r + 0.25) for even r+j and edge*(1.5*r - 0.25) for odd
/// r+j. Element rows l = 0..hney-1: even rows hold hnex hexagons spanning node
/// columns [2q, 2q+2], odd rows hold hnex-1 hexagons offset by one column.
/// Each element lists its six nodes counter-clockwise starting at the
/// top-right vertex: top row columns (c+2, c+1, c), then bottom row columns
/// (c, c+1, c+2).
///
/// For even hney the two corner nodes of the top node row belong to no
/// element; they are deleted and the numbering compacted.
///
/// Node i (0-based) owns DOFs 2i (x) and 2i+1 (y); element DOF rows
/// interleave them in node order.
class HexMesh {
 public:
  static HexMesh build(const MeshParams& params);

  const MeshParams& params() const { return params_; }
  std::int64_t num_elements() const { return nelem_; }
  std::int64_t num_nodes() const { return nnode_; }
  std::int64_t num_dofs() const { return 2 * nnode_; }

  /// Interleaved (x, y) per node, length 2*num_nodes().
  std::span<const double> node_xy() const { return coords_; }
  /// Six 0-based node ids per element, length 6*num_elements().
  std::span<const std::int32_t> element_nodes() const { return elem_nodes_; }
  /// Twelve 0-based DOF ids per element, length 12*num_elements().
  std::span<const std::int32_t> element_dofs() const { return elem_dofs_; }
  /// Interleaved (x, y) element centroids, length 2*num_elements().
  std::span<const double> centroid_xy() const { return centroids_; }

  std::span<const std::int32_t> nodes_of(std::int64_t e) const {
    return {elem_nodes_.data() + 6 * e, 6};
  }
  std::span<const std::int32_t> dofs_of(std::int64_t e) const {
    return {elem_dofs_.data() + 12 * e, 12};
  }
  double node_x(std::int64_t n) const { return coords_[2 * n]; }
  double node_y(std::int64_t n) const { return coords_[2 * n + 1]; }
  double centroid_x(std::int64_t e) const { return centroids_[2 * e]; }
  double centroid_y(std::int64_t e) const { return centroids_[2 * e + 1]; }

  /// Geometric area of one hexagon, 3*sqrt(3)/2 * edge^2. The optimizer's
  /// volume bookkeeping uses unit element volumes; this is for diagnostics.
  double element_area() const;

 private:
  MeshParams params_;
  std::int64_t nelem_ = 0;
  std::int64_t nnode_ = 0;
  std::vector<double> coords_;
  std::vector<std::int32_t> elem_nodes_;
  std::vector<std::int32_t> elem_dofs_;
  std::vector<double> centroids_;
};

inline HexMesh build_mesh(const MeshParams& params) { return HexMesh::build(params); }

/// Writes `nodes.csv` (id,x,y) and `elements.csv` (id,n1..n6) into `dir`,
/// 1-based ids, 17 significant digits. Throws std::runtime_error naming the
/// path on I/O failure.
void export_mesh(const HexMesh& mesh, const std::filesystem::path& dir);

}  // namespace hexatop
