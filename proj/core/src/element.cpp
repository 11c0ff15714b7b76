#include "hexatop/element.hpp"

#include <cmath>
#include <stdexcept>

namespace hexatop {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Edge-line forms l_i = A*eta1 + B*eta2 + C of the reference hexagon.
struct Line {
  double a, b, c;
  double at(const RefPoint& p) const { return a * p.eta1 + b * p.eta2 + c; }
};

constexpr Line kLines[6] = {
    {1.0, kSqrt3, -kSqrt3},   // l1
    {-1.0, kSqrt3, -kSqrt3},  // l2
    {2.0, 0.0, kSqrt3},       // l3
    {1.0, kSqrt3, kSqrt3},    // l4
    {-1.0, kSqrt3, kSqrt3},   // l5
    {2.0, 0.0, -kSqrt3},      // l6
};

// N_i uses the four lines not incident to vertex V_i, in cyclic order
// starting at l_{i+1}; the closed forms carry a minus sign for N3 and N6.
constexpr int kLineIdx[6][4] = {
    {1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4, 5, 0}, {4, 5, 0, 1}, {5, 0, 1, 2}, {0, 1, 2, 3},
};
constexpr double kSign[6] = {1.0, 1.0, -1.0, 1.0, 1.0, -1.0};

double pole_or_throw(const RefPoint& p) {
  const double cs = p.eta1 * p.eta1 + p.eta2 * p.eta2 - 3.0;
  if (cs >= 0.0)
    throw std::domain_error("reference point outside the eta1^2+eta2^2 < 3 circle");
  return cs;
}

}  // namespace

std::array<RefPoint, 6> reference_vertices() {
  std::array<RefPoint, 6> v;
  for (int i = 0; i < 6; ++i) {
    const double ang = (2 * i + 1) * 0.52359877559829887;  // (2i+1)*pi/6
    v[i] = {std::cos(ang), std::sin(ang)};
  }
  return v;
}

std::array<double, 6> shape_functions(const RefPoint& p) {
  const double cs = pole_or_throw(p);
  std::array<double, 6> n;
  for (int i = 0; i < 6; ++i) {
    double prod = 1.0;
    for (int k : kLineIdx[i]) prod *= kLines[k].at(p);
    n[i] = kSign[i] * prod / (18.0 * cs);
  }
  return n;
}

std::array<std::array<double, 2>, 6> shape_gradients(const RefPoint& p) {
  const double cs = pole_or_throw(p);
  std::array<std::array<double, 2>, 6> g;
  for (int i = 0; i < 6; ++i) {
    double vals[4];
    double prod = 1.0;
    for (int k = 0; k < 4; ++k) {
      vals[k] = kLines[kLineIdx[i][k]].at(p);
      prod *= vals[k];
    }
    // d(prod)/deta via the product rule over the four linear factors.
    double dp1 = 0.0, dp2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      double rest = 1.0;
      for (int m = 0; m < 4; ++m)
        if (m != k) rest *= vals[m];
      const Line& ln = kLines[kLineIdx[i][k]];
      dp1 += ln.a * rest;
      dp2 += ln.b * rest;
    }
    const double s = kSign[i] / (18.0 * cs * cs);
    g[i][0] = s * (dp1 * cs - prod * 2.0 * p.eta1);
    g[i][1] = s * (dp2 * cs - prod * 2.0 * p.eta2);
  }
  return g;
}

QuadratureRule quadrature(QuadratureLabel label) {
  // Ring parameters solve the D6 moment equations of the unit-circumradius
  // hexagon to machine precision; the rules are exact for polynomials of
  // degree 5, 7, 9 and 11 respectively. Ring angles are 0 or pi/6.
  constexpr double kPi6 = 0.52359877559829887;
  QuadratureRule r;
  r.label = label;
  switch (label) {
    case QuadratureLabel::N7:
      r.center_weight = 0.25595238095238095;  // 43/168
      r.rings = {{0.74833147735478828, 0.0, 0.12400793650793651}};
      break;
    case QuadratureLabel::N13:
      r.center_weight = 0.17458868432507766;
      r.rings = {{0.65767180872719493, 0.0, 0.11585530362694300},
                 {0.94360562950638179, kPi6, 0.021713248985544059}};
      break;
    case QuadratureLabel::N19:
      r.center_weight = 0.11082654722866182;
      r.rings = {{0.79282496717209188, 0.0, 0.037749166510142750},
                 {0.53779066335987895, kPi6, 0.082419705350589945},
                 {0.88354445793494244, kPi6, 0.028026703601157001}};
      break;
    case QuadratureLabel::N25:
      r.center_weight = 0.087005549094808184;
      r.rings = {{0.48778621387206922, 0.0, 0.071957468118574254},
                 {0.82074165710852488, 0.0, 0.027500185650866534},
                 {0.77180669681365247, kPi6, 0.045248932131663733},
                 {0.95791226879000035, kPi6, 0.0074591559164274480}};
      break;
    default:
      throw std::invalid_argument("unknown quadrature label");
  }
  return r;
}

std::vector<std::pair<RefPoint, double>> QuadratureRule::points() const {
  std::vector<std::pair<RefPoint, double>> pts;
  pts.reserve(num_points());
  pts.emplace_back(RefPoint{0.0, 0.0}, center_weight);
  for (const auto& ring : rings) {
    for (int i = 1; i <= 6; ++i) {
      const double ang = ring.angle + i * 1.0471975511965977;
      pts.emplace_back(RefPoint{ring.radius * std::cos(ang), ring.radius * std::sin(ang)},
                       ring.weight);
    }
  }
  return pts;
}

ElementStiffness element_stiffness(double nu, const QuadratureRule& rule, double edge) {
  if (!(nu >= 0.0 && nu < 0.5)) throw std::invalid_argument("Poisson ratio must be in [0, 0.5)");
  if (!(edge > 0.0)) throw std::invalid_argument("edge length must be positive");

  Eigen::Matrix3d d;
  const double f = 1.0 / (1.0 - nu * nu);
  d << f, f * nu, 0.0, f * nu, f, 0.0, 0.0, 0.0, f * (1.0 - nu) / 2.0;

  const double ref_area = 1.5 * kSqrt3;  // area of the circumradius-1 hexagon
  const double det_j = edge * edge;
  const double inv_edge = 1.0 / edge;

  Eigen::Matrix<double, 12, 12> k = Eigen::Matrix<double, 12, 12>::Zero();
  for (const auto& [pt, w] : rule.points()) {
    const auto grad = shape_gradients(pt);
    Eigen::Matrix<double, 3, 12> b = Eigen::Matrix<double, 3, 12>::Zero();
    for (int i = 0; i < 6; ++i) {
      const double gx = grad[i][0] * inv_edge;
      const double gy = grad[i][1] * inv_edge;
      b(0, 2 * i) = gx;
      b(1, 2 * i + 1) = gy;
      b(2, 2 * i) = gy;
      b(2, 2 * i + 1) = gx;
    }
    k += (w * ref_area * det_j) * (b.transpose() * d * b);
  }
  k = 0.5 * (k + k.transpose()).eval();

  ElementStiffness out;
  out.k0 = k;
  out.nu = nu;
  return out;
}

}  // namespace hexatop
