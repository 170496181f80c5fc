#include "curvedpipe/element.hpp"

namespace curvedpipe {

ElementGeometry::ElementGeometry(const std::array<Point, 3>& vertices) : p_(vertices) {
  const double j = (p_[1].r - p_[0].r) * (p_[2].theta - p_[0].theta) -
                   (p_[2].r - p_[0].r) * (p_[1].theta - p_[0].theta);
  area_ = 0.5 * j;
  for (int i = 0; i < 3; ++i) {
    const Point& a = p_[(i + 1) % 3];
    const Point& b = p_[(i + 2) % 3];
    // lambda_i vanishes on edge (a, b)
    grad_[i] = {(a.theta - b.theta) / j, (b.r - a.r) / j};
  }
}

Point ElementGeometry::map(const Barycentric& b) const noexcept {
  return {b[0] * p_[0].r + b[1] * p_[1].r + b[2] * p_[2].r,
          b[0] * p_[0].theta + b[1] * p_[1].theta + b[2] * p_[2].theta};
}

Barycentric ElementGeometry::barycentric(const Point& q) const noexcept {
  Barycentric b{};
  for (int i = 0; i < 3; ++i) {
    const Point& a = p_[(i + 1) % 3];
    b[i] = grad_[i][0] * (q.r - a.r) + grad_[i][1] * (q.theta - a.theta);
  }
  return b;
}

bool ElementGeometry::contains(const Point& q, double tol) const noexcept {
  const Barycentric b = barycentric(q);
  return b[0] >= -tol && b[1] >= -tol && b[2] >= -tol;
}

std::array<ScalarJet, 6> p2_basis(const ElementGeometry& g, const Barycentric& l) {
  std::array<ScalarJet, 6> out;
  for (int i = 0; i < 3; ++i) {
    const auto& gi = g.grad_lambda(i);
    ScalarJet& f = out[i];
    f.v = l[i] * (2.0 * l[i] - 1.0);
    const double d = 4.0 * l[i] - 1.0;
    f.r = d * gi[0];
    f.t = d * gi[1];
    f.rr = 4.0 * gi[0] * gi[0];
    f.rt = 4.0 * gi[0] * gi[1];
    f.tt = 4.0 * gi[1] * gi[1];
  }
  for (int e = 0; e < 3; ++e) {
    const int i = e;
    const int j = (e + 1) % 3;
    const auto& gi = g.grad_lambda(i);
    const auto& gj = g.grad_lambda(j);
    ScalarJet& f = out[3 + e];
    f.v = 4.0 * l[i] * l[j];
    f.r = 4.0 * (gi[0] * l[j] + l[i] * gj[0]);
    f.t = 4.0 * (gi[1] * l[j] + l[i] * gj[1]);
    f.rr = 8.0 * gi[0] * gj[0];
    f.rt = 4.0 * (gi[0] * gj[1] + gi[1] * gj[0]);
    f.tt = 8.0 * gi[1] * gj[1];
  }
  return out;
}

std::array<ScalarJet, 3> p1_basis(const ElementGeometry& g, const Barycentric& l) {
  std::array<ScalarJet, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i].v = l[i];
    out[i].r = g.grad_lambda(i)[0];
    out[i].t = g.grad_lambda(i)[1];
  }
  return out;
}

}  // namespace curvedpipe
