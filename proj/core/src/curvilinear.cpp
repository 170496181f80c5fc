#include "curvedpipe/curvilinear.hpp"

#include <cmath>
#include <string>

#include "curvedpipe/error.hpp"
#include "curvedpipe/jet.hpp"

namespace curvedpipe {

namespace {

using DualTensor = std::array<std::array<Dual, 3>, 3>;

void check_finite(const VelocitySample& s) {
  bool ok = std::isfinite(s.p) && std::isfinite(s.p_r) && std::isfinite(s.p_theta) &&
            std::isfinite(s.at.r) && std::isfinite(s.at.theta);
  for (const ScalarJet& j : s.velocity) {
    ok = ok && std::isfinite(j.v) && std::isfinite(j.r) && std::isfinite(j.t) &&
         std::isfinite(j.rr) && std::isfinite(j.rt) && std::isfinite(j.tt);
  }
  if (!ok) throw Error(ErrorCategory::domain, "curvilinear: non-finite sample");
}

// Component value together with its (r, theta) derivatives.
Dual value_of(const ScalarJet& j) { return {j.v, j.r, j.t}; }
Dual d_r(const ScalarJet& j) { return {j.r, j.rr, j.rt}; }
Dual d_theta(const ScalarJet& j) { return {j.t, j.rt, j.tt}; }

struct FrameGeometry {
  Dual r, c, s, B, B1, B2;
};

FrameGeometry frame_geometry(const Point& at, double delta) {
  FrameGeometry g;
  g.r = Dual(at.r, 1.0, 0.0);
  const Dual theta(at.theta, 0.0, 1.0);
  g.c = cos(theta);
  g.s = sin(theta);
  g.B2 = delta * g.r * g.c;
  g.B1 = delta * g.r * g.s;
  g.B = 1.0 + g.B2;
  return g;
}

// Gradient with derivatives; requires r > 0.
DualTensor gradient_dual(const VelocitySample& smp, const FrameGeometry& g, double delta) {
  const Dual u = value_of(smp.velocity[0]);
  const Dual v = value_of(smp.velocity[1]);
  const Dual w = value_of(smp.velocity[2]);
  DualTensor G;
  G[0] = {d_r(smp.velocity[0]), d_r(smp.velocity[1]), d_r(smp.velocity[2])};
  G[1] = {(d_theta(smp.velocity[0]) - v) / g.r, (d_theta(smp.velocity[1]) + u) / g.r,
          d_theta(smp.velocity[2]) / g.r};
  G[2] = {-delta * g.c * w / g.B, delta * g.s * w / g.B,
          delta * (g.c * u - g.s * v) / g.B};
  return G;
}

DualTensor flux_dual(const VelocitySample& smp, const DualTensor& G, const FlowParams& prm) {
  const double alpha = prm.alpha();
  const double re = prm.reynolds();
  const Dual p(smp.p, smp.p_r, smp.p_theta);
  const std::array<Dual, 3> vel = {value_of(smp.velocity[0]), value_of(smp.velocity[1]),
                                   value_of(smp.velocity[2])};
  DualTensor T;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Dual l;
      for (int k = 0; k < 3; ++k) l += G[k][i] * (G[k][j] + G[j][k]);
      T[i][j] = alpha * l - alpha * p * G[i][j] - re * vel[i] * vel[j];
    }
  }
  return T;
}

}  // namespace

FrameTensor velocity_gradient(const VelocitySample& smp, double delta) {
  check_finite(smp);
  const double r = smp.at.r;
  const double c = std::cos(smp.at.theta);
  const double s = std::sin(smp.at.theta);
  const double B = 1.0 + r * delta * c;
  const auto& [u, v, w] = smp.velocity;
  FrameTensor G;
  G(0, 0) = u.r;
  G(0, 1) = v.r;
  G(0, 2) = w.r;
  if (r > 0.0) {
    G(1, 0) = (u.t - v.v) / r;
    G(1, 1) = (v.t + u.v) / r;
    G(1, 2) = w.t / r;
  } else {
    G(1, 0) = u.rt - v.r;
    G(1, 1) = v.rt + u.r;
    G(1, 2) = w.rt;
  }
  G(2, 0) = -delta * c * w.v / B;
  G(2, 1) = delta * s * w.v / B;
  G(2, 2) = delta * (c * u.v - s * v.v) / B;
  return G;
}

FrameTensor extra_stress(const FrameTensor& gradu, double alpha) {
  return alpha * gradu.transpose() * (gradu + gradu.transpose());
}

FrameTensor total_flux_tensor(const VelocitySample& smp, const FrameTensor& gradu,
                              const FlowParams& prm) {
  const Eigen::Vector3d vel(smp.velocity[0].v, smp.velocity[1].v, smp.velocity[2].v);
  return extra_stress(gradu, prm.alpha()) - prm.alpha() * smp.p * gradu -
         prm.reynolds() * vel * vel.transpose();
}

FrameVector force_divergence(const VelocitySample& smp, const FlowParams& prm) {
  check_finite(smp);
  if (!(smp.at.r > 0.0)) {
    throw Error(ErrorCategory::domain,
                "force_divergence: requires r > 0 (got r = " + std::to_string(smp.at.r) + ")");
  }
  const double delta = prm.delta();
  const FrameGeometry g = frame_geometry(smp.at, delta);
  const DualTensor G = gradient_dual(smp, g, delta);
  const DualTensor T = flux_dual(smp, G, prm);
  const Dual rB = g.r * g.B;

  // div T = (1/(rB)) [d_r(rB T e_r) + d_theta(B T e_theta) + d_s(r T e_s)],
  // with d_theta e_r = e_theta, d_theta e_theta = -e_r and the s-derivatives
  // of the frame contributing the B1, B2 terms.
  const double B = g.B.v;
  const double B1 = g.B1.v;
  const double B2 = g.B2.v;
  const double jac = rB.v;
  FrameVector F;
  F[0] = ((rB * T[0][0]).dr + (g.B * T[0][1]).dt - B * T[1][1].v - B2 * T[2][2].v) / jac;
  F[1] = ((rB * T[1][0]).dr + (g.B * T[1][1]).dt + B * T[0][1].v + B1 * T[2][2].v) / jac;
  F[2] = ((rB * T[2][0]).dr + (g.B * T[2][1]).dt + B2 * T[0][2].v - B1 * T[1][2].v) / jac;

  const double axial = prm.alpha() * prm.pstar() / B;
  for (int i = 0; i < 3; ++i) F[i] += axial * G[i][2].v;
  return F;
}

double velocity_divergence(const VelocitySample& smp, double delta) {
  return velocity_gradient(smp, delta).trace();
}

FrameVector stokes_operator(const VelocitySample& smp, double delta) {
  const double r = smp.at.r;
  const Metric m = metric(r, smp.at.theta, delta);
  const double rB = r * m.B;
  auto A = [&](const ScalarJet& z) {
    return -z.rr - z.tt / (r * r) - (m.B + m.B2) / rB * z.r + m.B1 / (r * rB) * z.t;
  };
  const auto& [u, v, w] = smp.velocity;
  FrameVector out;
  out[0] = A(u) + 2.0 / (r * r) * v.t + (m.B * m.B + m.B2 * m.B2) / (rB * rB) * u.v -
           m.B1 * (m.B + m.B2) / (rB * rB) * v.v + smp.p_r;
  out[1] = A(v) - 2.0 / (r * r) * u.t + m.B1 / (rB * rB) * u.v +
           (m.B * m.B + m.B1 * m.B1) / (rB * rB) * v.v + smp.p_theta / r;
  out[2] = A(w) + (delta / m.B) * (delta / m.B) * w.v;
  return out;
}

}  // namespace curvedpipe
