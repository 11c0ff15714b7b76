#include "hexatop/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hexatop {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

struct Extents {
  double xmin, xmax, ymin, ymax, tol;
};

Extents extents_of(const HexMesh& mesh) {
  Extents e{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
            std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(), 0.0};
  for (std::int64_t n = 0; n < mesh.num_nodes(); ++n) {
    e.xmin = std::min(e.xmin, mesh.node_x(n));
    e.xmax = std::max(e.xmax, mesh.node_x(n));
    e.ymin = std::min(e.ymin, mesh.node_y(n));
    e.ymax = std::max(e.ymax, mesh.node_y(n));
  }
  e.tol = 1e-9 * std::max({e.xmax - e.xmin, e.ymax - e.ymin, 1.0});
  return e;
}

std::int64_t anchored_node(const HexMesh& mesh, NodeAnchor anchor, double px, double py,
                           const Extents& ext) {
  const std::int64_t nnode = mesh.num_nodes();
  std::int64_t best = -1;
  switch (anchor) {
    case NodeAnchor::nearest: {
      double best_d = std::numeric_limits<double>::max();
      for (std::int64_t n = 0; n < nnode; ++n) {
        const double dx = mesh.node_x(n) - px;
        const double dy = mesh.node_y(n) - py;
        const double d = dx * dx + dy * dy;
        if (d < best_d) { best_d = d; best = n; }
      }
      break;
    }
    case NodeAnchor::min_x_max_y: {
      double best_y = std::numeric_limits<double>::lowest();
      for (std::int64_t n = 0; n < nnode; ++n)
        if (mesh.node_x(n) <= ext.xmin + ext.tol && mesh.node_y(n) > best_y) {
          best_y = mesh.node_y(n);
          best = n;
        }
      break;
    }
    case NodeAnchor::min_x_min_y: {
      double best_y = std::numeric_limits<double>::max();
      for (std::int64_t n = 0; n < nnode; ++n)
        if (mesh.node_x(n) <= ext.xmin + ext.tol && mesh.node_y(n) < best_y) {
          best_y = mesh.node_y(n);
          best = n;
        }
      break;
    }
    case NodeAnchor::max_x_min_y: {
      double best_y = std::numeric_limits<double>::max();
      for (std::int64_t n = 0; n < nnode; ++n)
        if (mesh.node_x(n) >= ext.xmax - ext.tol && mesh.node_y(n) < best_y) {
          best_y = mesh.node_y(n);
          best = n;
        }
      break;
    }
    case NodeAnchor::last_node:
      best = nnode - 1;
      break;
  }
  if (best < 0) throw std::runtime_error("node selector resolved to an empty set");
  return best;
}

void append_dofs(std::vector<std::int32_t>& out, std::int64_t node, Axis dir) {
  if (dir == Axis::x || dir == Axis::both) out.push_back(static_cast<std::int32_t>(2 * node));
  if (dir == Axis::y || dir == Axis::both) out.push_back(static_cast<std::int32_t>(2 * node + 1));
}

}  // namespace

ProblemSpec preset_problem(Preset p) {
  ProblemSpec s;
  s.penal = 3.0;
  switch (p) {
    case Preset::mbb:
      // Half MBB beam: downward unit load at the top of the symmetry edge,
      // symmetry rollers along the left edge, vertical roller bottom-right.
      s.name = "mbb";
      s.mesh = {60, 20, kDefaultEdge};
      s.volfrac = 0.5;
      s.rfill = 1.8 * kSqrt3;
      s.filter = FilterMode::sens;
      s.loads = {{NodeAnchor::min_x_max_y, 0, 0, Axis::y, -1.0, 1}};
      s.supports = {{SupportDescriptor::Kind::edge_min_x, NodeAnchor::nearest, 0, 0, Axis::x},
                    {SupportDescriptor::Kind::node, NodeAnchor::max_x_min_y, 0, 0, Axis::y}};
      break;
    case Preset::michell:
      // Right half of a Michell-type domain: load on the symmetry edge at the
      // bottom, symmetry rollers on the left, pinned bottom-right corner.
      s.name = "michell";
      s.mesh = {120, 120, kDefaultEdge};
      s.volfrac = 0.20;
      s.rfill = 3.6 * kSqrt3;
      s.filter = FilterMode::sens;
      s.loads = {{NodeAnchor::min_x_min_y, 0, 0, Axis::y, -1.0, 1}};
      s.supports = {{SupportDescriptor::Kind::edge_min_x, NodeAnchor::nearest, 0, 0, Axis::x},
                    {SupportDescriptor::Kind::node, NodeAnchor::max_x_min_y, 0, 0, Axis::both}};
      break;
    case Preset::cantilever2:
      // Clamped left edge, two independent unit loads on the right edge:
      // down at the bottom corner, up at the last (top-right-most) node.
      s.name = "cantilever2";
      s.mesh = {120, 120, kDefaultEdge};
      s.volfrac = 0.4;
      s.rfill = 4.0 * kSqrt3;
      s.filter = FilterMode::sens;
      s.loads = {{NodeAnchor::max_x_min_y, 0, 0, Axis::y, -1.0, 1},
                 {NodeAnchor::last_node, 0, 0, Axis::y, 1.0, 2}};
      s.supports = {{SupportDescriptor::Kind::edge_min_x, NodeAnchor::nearest, 0, 0, Axis::both}};
      break;
    case Preset::passive_cantilever:
      // Clamped left edge, downward load at the bottom-right corner, a
      // circular void and a rectangular solid block kept out of the design.
      s.name = "passive-cantilever";
      s.mesh = {200, 100, kDefaultEdge};
      s.volfrac = 0.4;
      s.rfill = 6.4 * kSqrt3;
      s.filter = FilterMode::sens;
      s.loads = {{NodeAnchor::max_x_min_y, 0, 0, Axis::y, -1.0, 1}};
      s.supports = {{SupportDescriptor::Kind::edge_min_x, NodeAnchor::nearest, 0, 0, Axis::both}};
      {
        PassiveDescriptor hole;
        hole.shape = PassiveDescriptor::Shape::circle;
        hole.cx = 1.0 / 3.0;
        hole.cy = 0.5;
        hole.radius = 1.0 / 3.0;
        hole.fractional = true;
        hole.marker = -1;
        PassiveDescriptor block;
        block.shape = PassiveDescriptor::Shape::rect;
        block.x0 = 0.7;
        block.x1 = 0.9;
        block.y0 = 0.1;
        block.y1 = 0.3;
        block.fractional = true;
        block.marker = 1;
        s.passive = {hole, block};
      }
      break;
  }
  return s;
}

ProblemSpec preset_problem(const std::string& name) {
  if (name == "mbb") return preset_problem(Preset::mbb);
  if (name == "michell") return preset_problem(Preset::michell);
  if (name == "cantilever2") return preset_problem(Preset::cantilever2);
  if (name == "passive-cantilever") return preset_problem(Preset::passive_cantilever);
  throw std::invalid_argument("unknown problem preset: " + name);
}

ResolvedProblem resolve(const ProblemSpec& spec, const HexMesh& mesh) {
  const Extents ext = extents_of(mesh);

  int ncases = 0;
  for (const auto& ld : spec.loads) ncases = std::max(ncases, ld.load_case);
  if (ncases == 0) throw std::runtime_error("problem defines no loads");

  ResolvedProblem out;
  out.loads = Eigen::MatrixXd::Zero(mesh.num_dofs(), ncases);
  for (const auto& ld : spec.loads) {
    if (ld.load_case < 1) throw std::runtime_error("load cases are 1-based");
    if (ld.dir == Axis::both) throw std::runtime_error("a load needs a single direction");
    const std::int64_t node = anchored_node(mesh, ld.anchor, ld.x, ld.y, ext);
    const std::int64_t dof = 2 * node + (ld.dir == Axis::y ? 1 : 0);
    out.loads(dof, ld.load_case - 1) += ld.magnitude;
  }
  for (int c = 0; c < ncases; ++c)
    if (out.loads.col(c).cwiseAbs().maxCoeff() == 0.0)
      throw std::runtime_error("load case " + std::to_string(c + 1) + " is zero");

  std::vector<std::int32_t> fixed;
  for (const auto& sp : spec.supports) {
    using K = SupportDescriptor::Kind;
    if (sp.kind == K::node) {
      append_dofs(fixed, anchored_node(mesh, sp.anchor, sp.x, sp.y, ext), sp.dir);
      continue;
    }
    std::size_t before = fixed.size();
    if (sp.kind == K::edge_min_x || sp.kind == K::edge_max_x) {
      // One node per node row: the row's extremal-x node. On even-row meshes
      // the top corners are gone, so the top row's boundary node sits half a
      // column inward; it still belongs to the boundary set, matching the
      // row-stride DOF patterns this mesh family uses.
      const double band = 1.5 * mesh.params().edge;
      std::vector<std::int64_t> pick(mesh.params().hney + 1, -1);
      for (std::int64_t n = 0; n < mesh.num_nodes(); ++n) {
        const auto r = static_cast<std::size_t>(std::lround(mesh.node_y(n) / band));
        if (pick[r] < 0) { pick[r] = n; continue; }
        const bool better = sp.kind == K::edge_min_x ? mesh.node_x(n) < mesh.node_x(pick[r])
                                                     : mesh.node_x(n) > mesh.node_x(pick[r]);
        if (better) pick[r] = n;
      }
      for (std::int64_t n : pick)
        if (n >= 0) append_dofs(fixed, n, sp.dir);
    } else {
      for (std::int64_t n = 0; n < mesh.num_nodes(); ++n) {
        const double y = mesh.node_y(n);
        const bool on_edge = (sp.kind == K::edge_min_y && y <= ext.ymin + ext.tol) ||
                             (sp.kind == K::edge_max_y && y >= ext.ymax - ext.tol);
        if (on_edge) append_dofs(fixed, n, sp.dir);
      }
    }
    if (fixed.size() == before) throw std::runtime_error("edge selector matched no node");
  }
  out.supports = Supports::make(std::move(fixed), mesh.num_dofs());

  out.mask = PassiveMask::all_active(mesh.num_elements());
  if (!spec.passive.empty()) {
    double lx = 0.0, ly = 0.0;
    for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
      lx = std::max(lx, mesh.centroid_x(e));
      ly = std::max(ly, mesh.centroid_y(e));
    }
    for (const auto& pd : spec.passive) {
      const double sx = pd.fractional ? lx : 1.0;
      const double sy = pd.fractional ? ly : 1.0;
      for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
        const double cx = mesh.centroid_x(e);
        const double cy = mesh.centroid_y(e);
        bool inside = false;
        if (pd.shape == PassiveDescriptor::Shape::circle) {
          const double dx = cx - pd.cx * sx;
          const double dy = cy - pd.cy * sy;
          inside = std::sqrt(dx * dx + dy * dy) < pd.radius * sy;
        } else {
          inside = cx > pd.x0 * sx && cx < pd.x1 * sx && cy > pd.y0 * sy && cy < pd.y1 * sy;
        }
        if (inside) out.mask.marker[e] = pd.marker;
      }
    }
    if ((out.mask.marker.array() == 0).count() == 0)
      throw std::runtime_error("passive regions cover the whole domain");
  }
  return out;
}

}  // namespace hexatop
