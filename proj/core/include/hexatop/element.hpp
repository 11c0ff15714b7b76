#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace hexatop {

inline constexpr double kDefaultPoissonRatio = 0.29;

/// A point in the reference hexagon's coordinates (circumradius 1, vertices
/// at angles (2i-1)*pi/6).
struct RefPoint {
  double eta1 = 0.0;
  double eta2 = 0.0;
};

/// Reference vertices V1..V6, counter-clockwise from the top-right.
std::array<RefPoint, 6> reference_vertices();

/// Wachspress shape functions N1..N6 at p. Each N_i is a product of four of
/// the hexagon's edge-line forms divided by the circle eta1^2+eta2^2-3, with
/// the constant fixed by the Kronecker-delta property; evaluating the factored
/// form keeps N_i(V_j) = delta_ij exact. Throws std::domain_error when
/// eta1^2+eta2^2 >= 3 (outside the pole circle; never occurs on the element).
std::array<double, 6> shape_functions(const RefPoint& p);

/// Gradients (dN_i/deta1, dN_i/deta2); columns sum to zero.
std::array<std::array<double, 2>, 6> shape_gradients(const RefPoint& p);

enum class QuadratureLabel { N7, N13, N19, N25 };

/// Rotationally symmetric rule on the reference hexagon: a center point plus
/// rings of six points at angles alpha + i*pi/3. Normalized so that
/// w0 + 6*sum(w_k) = 1; integrals carry the element area separately.
struct QuadratureRule {
  struct Ring {
    double radius;
    double angle;
    double weight;
  };
  QuadratureLabel label;
  double center_weight;
  std::vector<Ring> rings;

  std::size_t num_points() const { return 1 + 6 * rings.size(); }
  /// Expanded (point, weight) list: center first, then each ring.
  std::vector<std::pair<RefPoint, double>> points() const;
};

/// Tabulated rules with 7, 13, 19 or 25 points.
QuadratureRule quadrature(QuadratureLabel label);

/// area * (w0*f(0,0) + sum_k sum_{i=1..6} w_k*f(ring point)).
template <class F>
double integrate(const QuadratureRule& rule, F&& f, double area) {
  double acc = rule.center_weight * f(RefPoint{0.0, 0.0});
  for (const auto& ring : rule.rings) {
    for (int i = 1; i <= 6; ++i) {
      const double ang = ring.angle + i * 1.0471975511965977;  // pi/3
      acc += ring.weight * f(RefPoint{ring.radius * std::cos(ang), ring.radius * std::sin(ang)});
    }
  }
  return area * acc;
}

/// Plane-stress element stiffness for a regular hexagon with unit Young's
/// modulus and unit thickness. DOF order (x1,y1,...,x6,y6) follows the
/// counter-clockwise vertex order. Scale-invariant: the 1/edge in the
/// physical gradients cancels the edge^2 Jacobian, so k0 does not depend on
/// the edge length.
struct ElementStiffness {
  Eigen::Matrix<double, 12, 12> k0;
  double nu = kDefaultPoissonRatio;
};

/// Integrates B^T D B over the hexagon. Requires 0 <= nu < 0.5.
ElementStiffness element_stiffness(double nu, const QuadratureRule& rule, double edge = 1.0);

}  // namespace hexatop
