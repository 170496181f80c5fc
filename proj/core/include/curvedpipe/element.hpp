#pragma once

#include <array>
#include <span>

#include "curvedpipe/mesh.hpp"

namespace curvedpipe {

/// Value, gradient and Hessian of a scalar in the parametric (r, theta) plane.
struct ScalarJet {
  double v = 0.0;
  double r = 0.0;
  double t = 0.0;
  double rr = 0.0;
  double rt = 0.0;
  double tt = 0.0;
};

using Barycentric = std::array<double, 3>;

/// Affine triangle in the parametric plane.
class ElementGeometry {
 public:
  explicit ElementGeometry(const std::array<Point, 3>& vertices);

  const std::array<Point, 3>& vertices() const noexcept { return p_; }
  double area() const noexcept { return area_; }
  /// Gradient (d/dr, d/dtheta) of barycentric coordinate i.
  const std::array<double, 2>& grad_lambda(int i) const noexcept { return grad_[i]; }

  Point map(const Barycentric& b) const noexcept;
  Barycentric barycentric(const Point& q) const noexcept;
  bool contains(const Point& q, double tol = 1e-12) const noexcept;

 private:
  std::array<Point, 3> p_;
  double area_;
  std::array<std::array<double, 2>, 3> grad_;
};

/// P2 Lagrange basis (vertices 0..2, then midpoints of edges 01, 12, 20).
std::array<ScalarJet, 6> p2_basis(const ElementGeometry& g, const Barycentric& b);
/// P1 Lagrange basis.
std::array<ScalarJet, 3> p1_basis(const ElementGeometry& g, const Barycentric& b);

template <std::size_t N>
ScalarJet combine(const std::array<ScalarJet, N>& basis, std::span<const double> coeffs) {
  ScalarJet out;
  for (std::size_t i = 0; i < N; ++i) {
    const double c = coeffs[i];
    out.v += c * basis[i].v;
    out.r += c * basis[i].r;
    out.t += c * basis[i].t;
    out.rr += c * basis[i].rr;
    out.rt += c * basis[i].rt;
    out.tt += c * basis[i].tt;
  }
  return out;
}

}  // namespace curvedpipe
