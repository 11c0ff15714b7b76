#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "hexatop/mesh.hpp"

using namespace hexatop;

namespace {

// Independent tally of the constructive scheme: elements row by row, nodes
// from the raw grid minus the two top corners for even row counts.
MeshCounts brute_force_counts(int nex, int ney) {
  std::int64_t nelem = 0;
  for (int l = 0; l < ney; ++l) nelem += (l % 2 == 0) ? nex : nex - 1;
  std::int64_t nnode = 0;
  for (int r = 0; r <= ney; ++r)
    for (int j = 0; j <= 2 * nex; ++j) ++nnode;
  if (ney % 2 == 0) nnode -= 2;
  return {nelem, nnode};
}

std::vector<int> dof_row_1based(const HexMesh& mesh, std::int64_t e) {
  std::vector<int> out;
  for (auto d : mesh.dofs_of(e)) out.push_back(d + 1);
  return out;
}

double polygon_area(const HexMesh& mesh, std::int64_t e) {
  const auto nodes = mesh.nodes_of(e);
  double acc = 0.0;
  for (int k = 0; k < 6; ++k) {
    const auto a = nodes[k];
    const auto b = nodes[(k + 1) % 6];
    acc += mesh.node_x(a) * mesh.node_y(b) - mesh.node_x(b) * mesh.node_y(a);
  }
  return 0.5 * acc;
}

std::int64_t count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::int64_t n = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

}  // namespace

TEST_CASE("counts match the closed forms") {
  CHECK(mesh_counts({4, 3}).nelem == 11);
  CHECK(mesh_counts({4, 3}).nnode == 36);
  CHECK(mesh_counts({1, 1}).nelem == 1);
  CHECK(mesh_counts({1, 1}).nnode == 6);
  CHECK(mesh_counts({4, 4}).nelem == 14);
  CHECK(mesh_counts({4, 4}).nnode == 43);
}

TEST_CASE("counts reject degenerate parameters") {
  CHECK_THROWS_AS(mesh_counts({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(mesh_counts({3, -1}), std::invalid_argument);
  CHECK_THROWS_AS(mesh_counts({3, 3, 0.0}), std::invalid_argument);
}

TEST_CASE("counts equal brute-force tallies for all sizes up to 12x12") {
  for (int nex = 1; nex <= 12; ++nex) {
    for (int ney = 1; ney <= 12; ++ney) {
      const MeshCounts expect = brute_force_counts(nex, ney);
      const MeshCounts got = mesh_counts({nex, ney});
      CHECK(got.nelem == expect.nelem);
      CHECK(got.nnode == expect.nnode);
      const HexMesh mesh = build_mesh({nex, ney});
      CHECK(mesh.num_elements() == expect.nelem);
      CHECK(mesh.num_nodes() == expect.nnode);
      CHECK(static_cast<std::int64_t>(mesh.node_xy().size()) == 2 * expect.nnode);
    }
  }
}

TEST_CASE("4x3 connectivity reproduces the golden DOF rows") {
  const HexMesh mesh = build_mesh({4, 3});
  CHECK(dof_row_1based(mesh, 0) ==
        std::vector<int>{23, 24, 21, 22, 19, 20, 1, 2, 3, 4, 5, 6});
  CHECK(dof_row_1based(mesh, 1) ==
        std::vector<int>{27, 28, 25, 26, 23, 24, 5, 6, 7, 8, 9, 10});
  CHECK(dof_row_1based(mesh, 2) ==
        std::vector<int>{31, 32, 29, 30, 27, 28, 9, 10, 11, 12, 13, 14});
  CHECK(dof_row_1based(mesh, 10) ==
        std::vector<int>{71, 72, 69, 70, 67, 68, 49, 50, 51, 52, 53, 54});
}

TEST_CASE("single hexagon layout") {
  const double a = kDefaultEdge;
  const HexMesh mesh = build_mesh({1, 1});
  std::vector<int> nodes;
  for (auto n : mesh.nodes_of(0)) nodes.push_back(n + 1);
  CHECK(nodes == std::vector<int>{6, 5, 4, 1, 2, 3});
  CHECK(mesh.node_x(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(mesh.node_y(0) == doctest::Approx(0.25 * a).epsilon(1e-15));
  CHECK(mesh.node_x(1) == doctest::Approx(a * kCos30).epsilon(1e-15));
  CHECK(mesh.node_y(1) == doctest::Approx(-0.25 * a).epsilon(1e-15));
  CHECK(mesh.centroid_x(0) == doctest::Approx(a * kCos30).epsilon(1e-15));
  CHECK(mesh.centroid_y(0) == doctest::Approx(0.75 * a).epsilon(1e-15));
}

TEST_CASE("4x4 removes the two top-corner hanging nodes and renumbers") {
  const HexMesh mesh = build_mesh({4, 4});
  CHECK(mesh.num_elements() == 14);
  CHECK(mesh.num_nodes() == 43);

  std::vector<bool> referenced(mesh.num_nodes(), false);
  std::int32_t max_id = -1;
  for (auto n : mesh.element_nodes()) {
    referenced[n] = true;
    max_id = std::max(max_id, n);
  }
  CHECK(max_id == 42);
  CHECK(std::all_of(referenced.begin(), referenced.end(), [](bool b) { return b; }));

  // Kept coordinates are the raw grid with positions 37 and 45 (1-based)
  // skipped: rows of 9 nodes, x = j*a*cos30, y alternating a quarter edge.
  const double a = kDefaultEdge;
  std::int64_t out = 0;
  for (int r = 0; r <= 4; ++r) {
    for (int j = 0; j <= 8; ++j) {
      const std::int64_t raw = r * 9 + j;
      if (raw == 36 || raw == 44) continue;
      CHECK(mesh.node_x(out) == doctest::Approx(j * a * kCos30).epsilon(1e-15));
      CHECK(mesh.node_y(out) ==
            doctest::Approx(a * (1.5 * r + ((r + j) % 2 == 0 ? 0.25 : -0.25))).epsilon(1e-15));
      ++out;
    }
  }
  CHECK(out == mesh.num_nodes());
}

TEST_CASE("every node is referenced for widths above one") {
  for (int nex = 2; nex <= 6; ++nex) {
    for (int ney = 1; ney <= 6; ++ney) {
      const HexMesh mesh = build_mesh({nex, ney});
      std::vector<bool> referenced(mesh.num_nodes(), false);
      for (auto n : mesh.element_nodes()) referenced[n] = true;
      CHECK(std::all_of(referenced.begin(), referenced.end(), [](bool b) { return b; }));
    }
  }
}

TEST_CASE("element pairs share either nothing or one full edge") {
  for (const auto& p : {MeshParams{8, 7}, MeshParams{8, 8}}) {
    const HexMesh mesh = build_mesh(p);
    for (std::int64_t e1 = 0; e1 < mesh.num_elements(); ++e1) {
      for (std::int64_t e2 = e1 + 1; e2 < mesh.num_elements(); ++e2) {
        const auto n1 = mesh.nodes_of(e1);
        const auto n2 = mesh.nodes_of(e2);
        std::vector<int> shared;
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j)
            if (n1[i] == n2[j]) shared.push_back(n1[i]);
        REQUIRE((shared.size() == 0 || shared.size() == 2));
        if (shared.size() == 2) {
          const auto adjacent = [&](std::span<const std::int32_t> nodes) {
            for (int i = 0; i < 6; ++i) {
              const int j = (i + 1) % 6;
              if ((nodes[i] == shared[0] && nodes[j] == shared[1]) ||
                  (nodes[i] == shared[1] && nodes[j] == shared[0]))
                return true;
            }
            return false;
          };
          CHECK(adjacent(n1));
          CHECK(adjacent(n2));
        }
      }
    }
  }
}

TEST_CASE("elements are congruent regular hexagons traversed CCW") {
  for (double a : {kDefaultEdge, 1.0, 2.5}) {
    const HexMesh mesh = build_mesh({5, 4, a});
    const double area = 1.5 * std::sqrt(3.0) * a * a;
    CHECK(mesh.element_area() == doctest::Approx(area).epsilon(1e-14));
    for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
      const auto nodes = mesh.nodes_of(e);
      for (int k = 0; k < 6; ++k) {
        const auto n1 = nodes[k];
        const auto n2 = nodes[(k + 1) % 6];
        const double dx = mesh.node_x(n2) - mesh.node_x(n1);
        const double dy = mesh.node_y(n2) - mesh.node_y(n1);
        CHECK(std::abs(std::hypot(dx, dy) - a) < 1e-12);
      }
      CHECK(std::abs(polygon_area(mesh, e) - area) < 1e-12);  // positive = CCW
    }
  }
}

TEST_CASE("DOF rows interleave the node ids") {
  const HexMesh mesh = build_mesh({6, 5});
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const auto nodes = mesh.nodes_of(e);
    const auto dofs = mesh.dofs_of(e);
    for (int k = 0; k < 6; ++k) {
      CHECK(dofs[2 * k] == 2 * nodes[k]);
      CHECK(dofs[2 * k + 1] == 2 * nodes[k] + 1);
    }
  }
}

TEST_CASE("centroids equal the vertex means") {
  const double a = kDefaultEdge;
  const HexMesh mesh = build_mesh({4, 3});
  CHECK(mesh.centroid_x(0) == doctest::Approx(a * kCos30).epsilon(1e-14));
  CHECK(mesh.centroid_y(0) == doctest::Approx(0.75 * a).epsilon(1e-14));
  CHECK(mesh.centroid_x(4) == doctest::Approx(2.0 * a * kCos30).epsilon(1e-14));
  CHECK(mesh.centroid_y(4) == doctest::Approx(2.25 * a).epsilon(1e-14));
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    double mx = 0.0, my = 0.0;
    for (auto n : mesh.nodes_of(e)) {
      mx += mesh.node_x(n) / 6.0;
      my += mesh.node_y(n) / 6.0;
    }
    CHECK(mesh.centroid_x(e) == doctest::Approx(mx).epsilon(1e-13));
    CHECK(mesh.centroid_y(e) == doctest::Approx(my).epsilon(1e-13));
  }
}

TEST_CASE("mesh export writes 1-based CSV files") {
  const auto dir = std::filesystem::temp_directory_path() / "hexatop_mesh_export_test";
  std::filesystem::remove_all(dir);

  export_mesh(build_mesh({1, 1}), dir);
  CHECK(count_lines(dir / "nodes.csv") == 6);

  export_mesh(build_mesh({4, 3}), dir);
  CHECK(count_lines(dir / "elements.csv") == 11);

  export_mesh(build_mesh({4, 4}), dir);
  CHECK(count_lines(dir / "nodes.csv") == 43);
  std::ifstream elems(dir / "elements.csv");
  std::string line;
  int max_ref = 0;
  while (std::getline(elems, line)) {
    std::stringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');  // element id
    while (std::getline(ss, tok, ',')) max_ref = std::max(max_ref, std::stoi(tok));
  }
  CHECK(max_ref == 43);
  std::filesystem::remove_all(dir);
}
