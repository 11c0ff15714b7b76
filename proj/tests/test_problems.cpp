#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hexatop/problems.hpp"

using namespace hexatop;

namespace {

std::set<std::int32_t> fixed_set(const ResolvedProblem& rp) {
  return {rp.supports.fixed_dofs.begin(), rp.supports.fixed_dofs.end()};
}

}  // namespace

TEST_CASE("mbb resolves symmetry rollers, corner support and corner load") {
  const ProblemSpec spec = preset_problem(Preset::mbb);
  CHECK(spec.volfrac == doctest::Approx(0.5));
  CHECK(spec.rfill == doctest::Approx(1.8 * std::sqrt(3.0)).epsilon(1e-15));

  const HexMesh mesh = build_mesh({4, 3});
  const ResolvedProblem rp = resolve(spec, mesh);

  // Left edge has one node per node row (4 rows for hney=3): x-DOFs of nodes
  // 0, 9, 18, 27 plus the y-DOF of the bottom-right corner node 8.
  const std::set<std::int32_t> expect = {2 * 0, 2 * 9, 2 * 18, 2 * 27, 2 * 8 + 1};
  CHECK(fixed_set(rp) == expect);

  // Load: node of maximal y among the x = 0 column is row 3 (node 27).
  REQUIRE(rp.loads.cols() == 1);
  CHECK(rp.loads(2 * 27 + 1, 0) == -1.0);
  CHECK(rp.loads.col(0).cwiseAbs().sum() == 1.0);
}

TEST_CASE("mbb symmetry supports include the inset top-row node on even-row meshes") {
  const ProblemSpec spec = preset_problem(Preset::mbb);
  const HexMesh mesh = build_mesh({4, 4});
  const ResolvedProblem rp = resolve(spec, mesh);
  // Rows 0..3 start at nodes 0,9,18,27 (x = 0); the top row lost its corner,
  // so its boundary node is 36 at x = edge*cos30. Plus the corner roller.
  const std::set<std::int32_t> expect = {2 * 0, 2 * 9, 2 * 18, 2 * 27, 2 * 36, 2 * 8 + 1};
  CHECK(fixed_set(rp) == expect);
  CHECK(mesh.node_x(36) == doctest::Approx(kDefaultEdge * kCos30));
}

TEST_CASE("michell loads the first node downward") {
  const ProblemSpec spec = preset_problem(Preset::michell);
  CHECK(spec.mesh.hnex == 120);
  CHECK(spec.mesh.hney == 120);
  CHECK(spec.volfrac == doctest::Approx(0.20));
  CHECK(spec.rfill == doctest::Approx(3.6 * std::sqrt(3.0)).epsilon(1e-15));

  for (const MeshParams mp : {MeshParams{4, 3}, MeshParams{4, 4}, MeshParams{6, 6}}) {
    const HexMesh mesh = build_mesh(mp);
    const ResolvedProblem rp = resolve(spec, mesh);
    // 1-based DOF 2, i.e. the y direction of node 1.
    CHECK(rp.loads(1, 0) == -1.0);
    CHECK(rp.loads.col(0).cwiseAbs().sum() == 1.0);

    const auto fixed = fixed_set(rp);
    // Both DOFs of the bottom-right corner node 2*hnex (0-based).
    CHECK(fixed.count(2 * (2 * mp.hnex)));
    CHECK(fixed.count(2 * (2 * mp.hnex) + 1));
    // x-DOFs along the x = 0 column.
    for (std::int64_t n = 0; n < mesh.num_nodes(); ++n)
      if (mesh.node_x(n) < 1e-12) CHECK(fixed.count(static_cast<std::int32_t>(2 * n)));
  }
}

TEST_CASE("two-load cantilever builds two columns and a clamped edge") {
  const ProblemSpec spec = preset_problem(Preset::cantilever2);
  CHECK(spec.volfrac == doctest::Approx(0.4));
  CHECK(spec.rfill == doctest::Approx(4.0 * std::sqrt(3.0)).epsilon(1e-15));

  const HexMesh mesh = build_mesh({4, 4});
  const ResolvedProblem rp = resolve(spec, mesh);
  REQUIRE(rp.loads.cols() == 2);
  CHECK(rp.loads(2 * 8 + 1, 0) == -1.0);                      // bottom-right corner, down
  CHECK(rp.loads(2 * (mesh.num_nodes() - 1) + 1, 1) == 1.0);  // last node, up
  CHECK(rp.loads.col(0).cwiseAbs().sum() == 1.0);
  CHECK(rp.loads.col(1).cwiseAbs().sum() == 1.0);

  const auto fixed = fixed_set(rp);
  for (std::int64_t n = 0; n < mesh.num_nodes(); ++n) {
    if (mesh.node_x(n) < 1e-12) {
      CHECK(fixed.count(static_cast<std::int32_t>(2 * n)));
      CHECK(fixed.count(static_cast<std::int32_t>(2 * n + 1)));
    }
  }
}

TEST_CASE("passive cantilever marks the void circle and solid block") {
  const ProblemSpec spec = preset_problem(Preset::passive_cantilever);
  CHECK(spec.mesh.hnex == 200);
  CHECK(spec.rfill == doctest::Approx(6.4 * std::sqrt(3.0)).epsilon(1e-15));

  const HexMesh mesh = build_mesh({20, 10});
  const ResolvedProblem rp = resolve(spec, mesh);

  double lx = 0.0, ly = 0.0;
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    lx = std::max(lx, mesh.centroid_x(e));
    ly = std::max(ly, mesh.centroid_y(e));
  }
  std::int64_t voids = 0, solids = 0;
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const double cx = mesh.centroid_x(e);
    const double cy = mesh.centroid_y(e);
    const bool in_circle = std::hypot(cx - lx / 3.0, cy - ly / 2.0) < ly / 3.0;
    const bool in_rect = cx > 0.7 * lx && cx < 0.9 * lx && cy > 0.1 * ly && cy < 0.3 * ly;
    if (in_rect) {
      CHECK(rp.mask.marker[e] == 1);
      ++solids;
    } else if (in_circle) {
      CHECK(rp.mask.marker[e] == -1);
      ++voids;
    } else {
      CHECK(rp.mask.marker[e] == 0);
    }
  }
  CHECK(voids > 0);
  CHECK(solids > 0);
  CHECK(rp.loads(2 * (2 * 20) + 1, 0) == -1.0);
}

TEST_CASE("the mbb load node converges to the top-left corner under refinement") {
  const ProblemSpec spec = preset_problem(Preset::mbb);
  double prev = 1e300;
  for (int scale : {1, 2, 4}) {  // fixed parity: even row counts throughout
    const HexMesh mesh = build_mesh({12 * scale, 4 * scale});
    const ResolvedProblem rp = resolve(spec, mesh);
    std::int64_t load_node = -1;
    for (std::int64_t d = 0; d < mesh.num_dofs(); ++d)
      if (rp.loads(d, 0) != 0.0) load_node = d / 2;
    double ymax = 0.0;
    for (std::int64_t n = 0; n < mesh.num_nodes(); ++n) ymax = std::max(ymax, mesh.node_y(n));
    const double gap =
        std::hypot(mesh.node_x(load_node), ymax - mesh.node_y(load_node)) / ymax;
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(preset_problem("nope"), std::invalid_argument);

  ProblemSpec empty;
  empty.supports = preset_problem(Preset::mbb).supports;
  const HexMesh mesh = build_mesh({3, 3});
  CHECK_THROWS_AS(resolve(empty, mesh), std::runtime_error);  // no loads

  ProblemSpec bad = preset_problem(Preset::mbb);
  bad.loads[0].load_case = 0;
  CHECK_THROWS_AS(resolve(bad, mesh), std::runtime_error);

  ProblemSpec cancel = preset_problem(Preset::mbb);
  LoadDescriptor opposite = cancel.loads[0];
  opposite.magnitude = -opposite.magnitude;
  cancel.loads.push_back(opposite);  // sums to a zero column
  CHECK_THROWS_AS(resolve(cancel, mesh), std::runtime_error);
}
