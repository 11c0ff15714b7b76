#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "hexatop/fea.hpp"
#include "hexatop/filters.hpp"
#include "hexatop/mesh.hpp"
#include "hexatop/optimizer.hpp"

namespace hexatop {

enum class Axis { x, y, both };

/// How a descriptor picks its node. The corner anchors are lexicographic
/// (primary coordinate first, then the tie-break coordinate), which stays
/// stable under refinement; `nearest` takes the node closest to a point;
/// `last_node` is the highest node id, the top-right-most node after
/// hanging-node compaction.
enum class NodeAnchor { nearest, min_x_max_y, min_x_min_y, max_x_min_y, last_node };

struct LoadDescriptor {
  NodeAnchor anchor = NodeAnchor::nearest;
  double x = 0.0;
  double y = 0.0;
  Axis dir = Axis::y;
  double magnitude = -1.0;
  int load_case = 1;  // 1-based
};

struct SupportDescriptor {
  /// edge_min_x / edge_max_x pick the extremal-x node of every node row
  /// (on even-row meshes the top row's boundary node sits half a column
  /// inward after hanging-node removal and is still selected, matching the
  /// row-stride DOF patterns of this mesh family); edge_min_y / edge_max_y
  /// pick all nodes of the bottom/top boundary band.
  enum class Kind { edge_min_x, edge_max_x, edge_min_y, edge_max_y, node };
  Kind kind = Kind::node;
  NodeAnchor anchor = NodeAnchor::nearest;  // for Kind::node
  double x = 0.0;
  double y = 0.0;
  Axis dir = Axis::both;
};

/// Centroid predicate marking a region pinned solid (+1) or void (-1).
/// With `fractional` set, x-like parameters scale by the largest centroid x
/// and y-like parameters (including the circle radius) by the largest
/// centroid y. Inequalities are strict. Later descriptors win on overlap.
struct PassiveDescriptor {
  enum class Shape { circle, rect };
  Shape shape = Shape::circle;
  double cx = 0.0, cy = 0.0, radius = 0.0;      // circle
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // rect
  bool fractional = false;
  int marker = -1;
};

struct ProblemSpec {
  std::string name;
  MeshParams mesh;
  double volfrac = 0.5;
  double penal = 3.0;
  /// Filter radius in multiples of the hexagon edge length, so the
  /// neighborhood scales with the mesh; multiply by mesh.edge for the radius
  /// in model units (filter_radius()).
  double rfill = 0.0;
  FilterMode filter = FilterMode::sens;
  int maxiter = 200;
  double move = 0.2;
  std::vector<LoadDescriptor> loads;
  std::vector<SupportDescriptor> supports;
  std::vector<PassiveDescriptor> passive;

  double filter_radius() const { return rfill * mesh.edge; }
};

/// The built-in benchmark problems.
enum class Preset { mbb, michell, cantilever2, passive_cantilever };

ProblemSpec preset_problem(Preset p);
/// Accepts the CLI spellings: mbb, michell, cantilever2, passive-cantilever.
ProblemSpec preset_problem(const std::string& name);

struct ResolvedProblem {
  Eigen::MatrixXd loads;  // 2*nnode x ncases
  Supports supports;
  PassiveMask mask;
};

/// Resolves descriptors against a mesh. Throws std::runtime_error when a
/// selector produces an empty support set or a zero load column.
ResolvedProblem resolve(const ProblemSpec& spec, const HexMesh& mesh);

}  // namespace hexatop
