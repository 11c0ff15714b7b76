#include "hexatop/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace hexatop {

namespace {

void validate(const MeshParams& p) {
  if (p.hnex < 1 || p.hney < 1)
    throw std::invalid_argument("mesh dimensions must be positive, got " +
                                std::to_string(p.hnex) + "x" + std::to_string(p.hney));
  if (!(p.edge > 0.0))
    throw std::invalid_argument("edge length must be positive");
}

}  // namespace

MeshCounts mesh_counts(const MeshParams& p) {
  validate(p);
  const std::int64_t nex = p.hnex;
  const std::int64_t ney = p.hney;
  MeshCounts c;
  c.nelem = nex * ((ney + 1) / 2) + (nex - 1) * (ney / 2);
  c.nnode = (2 * nex + 1) * (ney + 1) - (ney % 2 == 0 ? 2 : 0);
  return c;
}

HexMesh HexMesh::build(const MeshParams& p) {
  validate(p);
  const std::int64_t nex = p.hnex;
  const std::int64_t ney = p.hney;
  const double a = p.edge;
  const double dx = a * kCos30;

  const std::int64_t ncol = 2 * nex + 1;        // nodes per node row
  const std::int64_t raw_nnode = ncol * (ney + 1);
  const MeshCounts counts = mesh_counts(p);

  HexMesh m;
  m.params_ = p;
  m.nelem_ = counts.nelem;
  m.nnode_ = counts.nnode;

  m.coords_.resize(2 * raw_nnode);
  for (std::int64_t r = 0; r <= ney; ++r) {
    const double ybase = 1.5 * static_cast<double>(r) * a;
    for (std::int64_t j = 0; j < ncol; ++j) {
      const std::int64_t n = r * ncol + j;
      m.coords_[2 * n] = static_cast<double>(j) * dx;
      m.coords_[2 * n + 1] = ybase + ((r + j) % 2 == 0 ? 0.25 * a : -0.25 * a);
    }
  }

  m.elem_nodes_.resize(6 * counts.nelem);
  m.centroids_.resize(2 * counts.nelem);
  std::int64_t e = 0;
  for (std::int64_t l = 0; l < ney; ++l) {
    const bool even = (l % 2 == 0);
    const std::int64_t nrow = even ? nex : nex - 1;
    const double cy = a * (1.5 * static_cast<double>(l) + 0.75);
    for (std::int64_t q = 0; q < nrow; ++q) {
      const std::int64_t c = even ? 2 * q : 2 * q + 1;
      const std::int64_t bot = l * ncol + c;
      const std::int64_t top = (l + 1) * ncol + c;
      std::int32_t* nodes = m.elem_nodes_.data() + 6 * e;
      nodes[0] = static_cast<std::int32_t>(top + 2);
      nodes[1] = static_cast<std::int32_t>(top + 1);
      nodes[2] = static_cast<std::int32_t>(top);
      nodes[3] = static_cast<std::int32_t>(bot);
      nodes[4] = static_cast<std::int32_t>(bot + 1);
      nodes[5] = static_cast<std::int32_t>(bot + 2);
      m.centroids_[2 * e] = static_cast<double>(c + 1) * dx;
      m.centroids_[2 * e + 1] = cy;
      ++e;
    }
  }

  if (ney % 2 == 0) {
    // The top node row is touched only by the odd element row below it,
    // which skips columns 0 and 2*hnex. Drop those two corner nodes and
    // shift every id above them down.
    const std::int64_t h1 = ney * ncol;
    const std::int64_t h2 = ney * ncol + 2 * nex;  // == raw_nnode - 1
    for (auto& n : m.elem_nodes_) {
      if (n > h1) n -= 1;
      if (n > h2) n -= 1;  // never taken: h2 is the last raw id
    }
    std::vector<double> compact(2 * counts.nnode);
    std::int64_t out = 0;
    for (std::int64_t n = 0; n < raw_nnode; ++n) {
      if (n == h1 || n == h2) continue;
      compact[2 * out] = m.coords_[2 * n];
      compact[2 * out + 1] = m.coords_[2 * n + 1];
      ++out;
    }
    m.coords_ = std::move(compact);
  }

  m.elem_dofs_.resize(12 * counts.nelem);
  for (std::int64_t k = 0; k < 6 * counts.nelem; ++k) {
    m.elem_dofs_[2 * k] = 2 * m.elem_nodes_[k];
    m.elem_dofs_[2 * k + 1] = 2 * m.elem_nodes_[k] + 1;
  }
  return m;
}

double HexMesh::element_area() const {
  return 1.5 * std::sqrt(3.0) * params_.edge * params_.edge;
}

void export_mesh(const HexMesh& mesh, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);

  const auto write_or_throw = [](const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << body;
    if (!out) throw std::runtime_error("write failed for " + path.string());
  };

  std::string nodes;
  nodes.reserve(static_cast<std::size_t>(mesh.num_nodes()) * 48);
  char line[128];
  for (std::int64_t n = 0; n < mesh.num_nodes(); ++n) {
    std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g\n",
                  static_cast<long long>(n + 1), mesh.node_x(n), mesh.node_y(n));
    nodes += line;
  }
  write_or_throw(dir / "nodes.csv", nodes);

  std::string elems;
  elems.reserve(static_cast<std::size_t>(mesh.num_elements()) * 48);
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const auto nd = mesh.nodes_of(e);
    std::snprintf(line, sizeof(line), "%lld,%d,%d,%d,%d,%d,%d\n",
                  static_cast<long long>(e + 1), nd[0] + 1, nd[1] + 1, nd[2] + 1,
                  nd[3] + 1, nd[4] + 1, nd[5] + 1);
    elems += line;
  }
  write_or_throw(dir / "elements.csv", elems);
}

}  // namespace hexatop
