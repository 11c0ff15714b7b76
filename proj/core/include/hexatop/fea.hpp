#pragma once

#include <Eigen/Core>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cstdint>
#include <memory>
#include <vector>

#include "hexatop/element.hpp"
#include "hexatop/mesh.hpp"

namespace hexatop {

/// Modified SIMP interpolation E(rho) = emin + rho^penal * (e0 - emin).
struct Material {
  double e0 = 1.0;
  double emin = 1e-9;
  double penal = 3.0;

  double youngs(double rho) const { return emin + std::pow(rho, penal) * (e0 - emin); }
  double dyoungs(double rho) const { return penal * std::pow(rho, penal - 1.0) * (e0 - emin); }
};

/// Sorted, unique 0-based DOF ids held at zero displacement.
struct Supports {
  std::vector<std::int32_t> fixed_dofs;

  /// Sorts, dedupes and validates against the DOF count.
  static Supports make(std::vector<std::int32_t> dofs, std::int64_t ndof);
};

/// Full-size SIMP-interpolated global stiffness, dimension 2*nnode.
Eigen::SparseMatrix<double> assemble(const HexMesh& mesh, const Eigen::VectorXd& xphys,
                                     const Material& mat, const ElementStiffness& ke);

/// Direct solve of K U = F with the fixed DOFs eliminated; U is zero there.
/// One factorization serves all load-case columns of F. Throws
/// std::runtime_error when the reduced system is not positive definite
/// (ill-posed supports).
Eigen::MatrixXd solve(const Eigen::SparseMatrix<double>& k, const Eigen::MatrixXd& loads,
                      const Supports& supports, double* relative_residual = nullptr);

/// Compliance C = sum over cases and elements of E(rho_j) u_j^T k0 u_j, and
/// its adjoint sensitivity dc_j = -penal*(e0-emin)*rho_j^(penal-1) u_j^T k0 u_j
/// summed over cases (never positive).
struct ComplianceResult {
  double compliance = 0.0;
  Eigen::VectorXd dc;
};
ComplianceResult compliance_and_sensitivity(const HexMesh& mesh, const Eigen::MatrixXd& u,
                                            const Eigen::VectorXd& xphys, const Material& mat,
                                            const ElementStiffness& ke);

/// Constant volume-constraint gradient, dv_j = 1/(nelem*volfrac).
Eigen::VectorXd volume_sensitivity(const HexMesh& mesh, double volfrac);

/// Equilibrium solver that keeps the reduced sparsity pattern, the
/// symbolic factorization and an element-to-slot scatter map across density
/// updates; only numeric refill and factorization happen per iteration.
class EquilibriumSolver {
 public:
  EquilibriumSolver(const HexMesh& mesh, const ElementStiffness& ke, const Supports& supports);
  ~EquilibriumSolver();
  EquilibriumSolver(EquilibriumSolver&&) noexcept;
  EquilibriumSolver& operator=(EquilibriumSolver&&) noexcept;

  /// Refills the reduced matrix for the given densities and refactorizes.
  void factorize(const Eigen::VectorXd& xphys, const Material& mat);

  /// Full-size loads in, full-size displacements out (zero on fixed DOFs).
  /// Requires factorize() first. Applies one step of iterative refinement
  /// when needed to hold the relative residual below 1e-12.
  Eigen::MatrixXd solve(const Eigen::MatrixXd& loads) const;

  /// Largest relative residual max_c ||K u_c - f_c|| / ||f_c|| seen in the
  /// most recent solve().
  double last_relative_residual() const;

  std::int64_t num_free_dofs() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hexatop
