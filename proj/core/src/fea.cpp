#include "hexatop/fea.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hexatop {

namespace {

void check_density_vector(const HexMesh& mesh, const Eigen::VectorXd& xphys) {
  if (xphys.size() != mesh.num_elements())
    throw std::invalid_argument("density vector length " + std::to_string(xphys.size()) +
                                " does not match element count " +
                                std::to_string(mesh.num_elements()));
}

std::vector<std::int32_t> free_dof_map(std::int64_t ndof, const Supports& supports) {
  std::vector<std::int32_t> map(ndof, 0);
  for (auto d : supports.fixed_dofs) {
    if (d < 0 || d >= ndof) throw std::invalid_argument("fixed DOF out of range");
    map[d] = -1;
  }
  std::int32_t next = 0;
  for (auto& v : map) v = (v < 0) ? -1 : next++;
  return map;
}

}  // namespace

Supports Supports::make(std::vector<std::int32_t> dofs, std::int64_t ndof) {
  std::sort(dofs.begin(), dofs.end());
  dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
  if (dofs.empty()) throw std::invalid_argument("support set is empty");
  if (dofs.front() < 0 || dofs.back() >= ndof)
    throw std::invalid_argument("fixed DOF out of range");
  return Supports{std::move(dofs)};
}

Eigen::SparseMatrix<double> assemble(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                                     const Material& mat, const ElementStiffness& ke) {
  check_density_vector(mesh, xphys);
  const std::int64_t ndof = mesh.num_dofs();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(mesh.num_elements()) * 144);
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const double young = mat.youngs(xphys[e]);
    const auto dofs = mesh.dofs_of(e);
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j)
        trips.emplace_back(dofs[i], dofs[j], young * ke.k0(i, j));
  }
  Eigen::SparseMatrix<double> k(ndof, ndof);
  k.setFromTriplets(trips.begin(), trips.end());
  return k;
}

Eigen::MatrixXd solve(const Eigen::SparseMatrix<double>& k, const Eigen::MatrixXd& loads,
                      const Supports& supports, double* relative_residual) {
  if (k.rows() != loads.rows())
    throw std::invalid_argument("load vector length does not match system dimension");
  const std::int64_t ndof = k.rows();
  const auto map = free_dof_map(ndof, supports);
  const std::int64_t nfree = ndof - static_cast<std::int64_t>(supports.fixed_dofs.size());

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(k.nonZeros());
  for (int col = 0; col < k.outerSize(); ++col) {
    if (map[col] < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(k, col); it; ++it) {
      if (map[it.row()] < 0) continue;
      trips.emplace_back(map[it.row()], map[col], it.value());
    }
  }
  Eigen::SparseMatrix<double> kff(nfree, nfree);
  kff.setFromTriplets(trips.begin(), trips.end());

  Eigen::MatrixXd ff(nfree, loads.cols());
  for (std::int64_t d = 0; d < ndof; ++d)
    if (map[d] >= 0) ff.row(map[d]) = loads.row(d);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(kff);
  if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() <= 0.0)
    throw std::runtime_error("reduced stiffness matrix is not positive definite; "
                             "supports do not eliminate all rigid modes");
  Eigen::MatrixXd uf = ldlt.solve(ff);

  double worst = 0.0;
  for (int c = 0; c < ff.cols(); ++c) {
    const double fn = ff.col(c).norm();
    if (fn == 0.0) continue;
    worst = std::max(worst, (kff * uf.col(c) - ff.col(c)).norm() / fn);
  }
  if (relative_residual) *relative_residual = worst;

  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(ndof, loads.cols());
  for (std::int64_t d = 0; d < ndof; ++d)
    if (map[d] >= 0) u.row(d) = uf.row(map[d]);
  return u;
}

ComplianceResult compliance_and_sensitivity(const HexMesh& mesh, const Eigen::MatrixXd& u,
                                            const Eigen::VectorXd& xphys, const Material& mat,
                                            const ElementStiffness& ke) {
  check_density_vector(mesh, xphys);
  if (u.rows() != mesh.num_dofs())
    throw std::invalid_argument("displacement vector length does not match DOF count");

  ComplianceResult out;
  out.dc = Eigen::VectorXd::Zero(mesh.num_elements());
  Eigen::Matrix<double, 12, 1> ue;
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const auto dofs = mesh.dofs_of(e);
    double ce = 0.0;
    for (int c = 0; c < u.cols(); ++c) {
      for (int i = 0; i < 12; ++i) ue[i] = u(dofs[i], c);
      ce += ue.dot(ke.k0 * ue);
    }
    out.compliance += mat.youngs(xphys[e]) * ce;
    out.dc[e] = -mat.dyoungs(xphys[e]) * ce;
  }
  return out;
}

Eigen::VectorXd volume_sensitivity(const HexMesh& mesh, double volfrac) {
  if (!(volfrac > 0.0 && volfrac <= 1.0))
    throw std::invalid_argument("volume fraction must be in (0, 1]");
  return Eigen::VectorXd::Constant(mesh.num_elements(),
                                   1.0 / (static_cast<double>(mesh.num_elements()) * volfrac));
}

struct EquilibriumSolver::Impl {
  const HexMesh* mesh;
  ElementStiffness ke;
  std::vector<std::int32_t> dof_map;  // global dof -> free index or -1
  std::int64_t nfree = 0;
  Eigen::SparseMatrix<double> kff;
  std::vector<std::int64_t> slots;  // nelem*144 value-array offsets, -1 for fixed pairs
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  bool factorized = false;
  mutable double residual = 0.0;
};

EquilibriumSolver::EquilibriumSolver(const HexMesh& mesh, const ElementStiffness& ke,
                                     const Supports& supports)
    : impl_(std::make_unique<Impl>()) {
  impl_->mesh = &mesh;
  impl_->ke = ke;
  impl_->dof_map = free_dof_map(mesh.num_dofs(), supports);
  impl_->nfree = mesh.num_dofs() - static_cast<std::int64_t>(supports.fixed_dofs.size());
  if (impl_->nfree <= 0) throw std::invalid_argument("no free DOFs left");

  const std::int64_t nelem = mesh.num_elements();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(nelem) * 144);
  for (std::int64_t e = 0; e < nelem; ++e) {
    const auto dofs = mesh.dofs_of(e);
    for (int i = 0; i < 12; ++i) {
      const auto fi = impl_->dof_map[dofs[i]];
      if (fi < 0) continue;
      for (int j = 0; j < 12; ++j) {
        const auto fj = impl_->dof_map[dofs[j]];
        if (fj >= 0) trips.emplace_back(fi, fj, 1.0);
      }
    }
  }
  impl_->kff.resize(impl_->nfree, impl_->nfree);
  impl_->kff.setFromTriplets(trips.begin(), trips.end());
  impl_->kff.makeCompressed();
  impl_->ldlt.analyzePattern(impl_->kff);

  // Map each element entry to its slot in the compressed value array.
  const auto* outer = impl_->kff.outerIndexPtr();
  const auto* inner = impl_->kff.innerIndexPtr();
  impl_->slots.assign(static_cast<std::size_t>(nelem) * 144, -1);
  for (std::int64_t e = 0; e < nelem; ++e) {
    const auto dofs = mesh.dofs_of(e);
    for (int j = 0; j < 12; ++j) {
      const auto fj = impl_->dof_map[dofs[j]];
      if (fj < 0) continue;
      for (int i = 0; i < 12; ++i) {
        const auto fi = impl_->dof_map[dofs[i]];
        if (fi < 0) continue;
        const auto* begin = inner + outer[fj];
        const auto* end = inner + outer[fj + 1];
        const auto* hit = std::lower_bound(begin, end, fi);
        impl_->slots[e * 144 + j * 12 + i] = outer[fj] + (hit - begin);
      }
    }
  }
}

EquilibriumSolver::~EquilibriumSolver() = default;
EquilibriumSolver::EquilibriumSolver(EquilibriumSolver&&) noexcept = default;
EquilibriumSolver& EquilibriumSolver::operator=(EquilibriumSolver&&) noexcept = default;

void EquilibriumSolver::factorize(const Eigen::VectorXd& xphys, const Material& mat) {
  const HexMesh& mesh = *impl_->mesh;
  check_density_vector(mesh, xphys);
  double* values = impl_->kff.valuePtr();
  std::fill(values, values + impl_->kff.nonZeros(), 0.0);
  const Eigen::Matrix<double, 12, 12>& k0 = impl_->ke.k0;
  for (std::int64_t e = 0; e < mesh.num_elements(); ++e) {
    const double young = mat.youngs(xphys[e]);
    const std::int64_t* slot = impl_->slots.data() + e * 144;
    for (int j = 0; j < 12; ++j)
      for (int i = 0; i < 12; ++i, ++slot)
        if (*slot >= 0) values[*slot] += young * k0(i, j);
  }
  impl_->ldlt.factorize(impl_->kff);
  if (impl_->ldlt.info() != Eigen::Success || impl_->ldlt.vectorD().minCoeff() <= 0.0)
    throw std::runtime_error("reduced stiffness matrix is not positive definite; "
                             "supports do not eliminate all rigid modes");
  impl_->factorized = true;
}

Eigen::MatrixXd EquilibriumSolver::solve(const Eigen::MatrixXd& loads) const {
  if (!impl_->factorized) throw std::logic_error("factorize() must be called before solve()");
  const HexMesh& mesh = *impl_->mesh;
  if (loads.rows() != mesh.num_dofs())
    throw std::invalid_argument("load vector length does not match DOF count");

  Eigen::MatrixXd ff(impl_->nfree, loads.cols());
  for (std::int64_t d = 0; d < mesh.num_dofs(); ++d)
    if (impl_->dof_map[d] >= 0) ff.row(impl_->dof_map[d]) = loads.row(d);

  Eigen::MatrixXd uf = impl_->ldlt.solve(ff);
  double worst = 0.0;
  for (int c = 0; c < ff.cols(); ++c) {
    const double fn = ff.col(c).norm();
    if (fn == 0.0) continue;
    Eigen::VectorXd r = ff.col(c) - impl_->kff * uf.col(c);
    double rel = r.norm() / fn;
    if (rel > 1e-12) {  // one refinement pass keeps the residual contract cheap
      uf.col(c) += impl_->ldlt.solve(r);
      r = ff.col(c) - impl_->kff * uf.col(c);
      rel = r.norm() / fn;
    }
    worst = std::max(worst, rel);
  }
  impl_->residual = worst;

  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(mesh.num_dofs(), loads.cols());
  for (std::int64_t d = 0; d < mesh.num_dofs(); ++d)
    if (impl_->dof_map[d] >= 0) u.row(d) = uf.row(impl_->dof_map[d]);
  return u;
}

double EquilibriumSolver::last_relative_residual() const { return impl_->residual; }

std::int64_t EquilibriumSolver::num_free_dofs() const { return impl_->nfree; }

}  // namespace hexatop
