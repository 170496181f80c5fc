#include "curvedpipe/cartesian_oracle.hpp"

#include <cmath>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

using Vec3 = Eigen::Vector3d;

struct Frame {
  Vec3 er, et, es;
};

Frame frame_at(double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  return {Vec3(c * cp, c * sp, s), Vec3(-s * cp, -s * sp, c), Vec3(-sp, cp, 0.0)};
}

class PipeMap {
 public:
  explicit PipeMap(double delta) : delta_(delta) {}

  Vec3 forward(double r, double theta, double s) const {
    if (delta_ == 0.0) return {r * std::cos(theta), s, r * std::sin(theta)};
    const double R = 1.0 / delta_ + r * std::cos(theta);
    return {R * std::cos(s * delta_), R * std::sin(s * delta_), r * std::sin(theta)};
  }

  // Returns (r, theta, s, phi) where phi is the frame rotation angle.
  std::array<double, 4> inverse(const Vec3& x) const {
    double rc, phi, s;
    if (delta_ == 0.0) {
      rc = x[0];
      s = x[1];
      phi = 0.0;
    } else {
      phi = std::atan2(x[1], x[0]);
      s = phi / delta_;
      rc = std::hypot(x[0], x[1]) - 1.0 / delta_;
    }
    return {std::hypot(rc, x[2]), std::atan2(x[2], rc), s, phi};
  }

 private:
  double delta_;
};

struct CartesianState {
  Vec3 u;
  double p;
};

constexpr std::array<double, 4> kOffsets = {-2.0, -1.0, 1.0, 2.0};
constexpr std::array<double, 4> kWeights = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};

}  // namespace

VelocitySample sample_from_analytic(const AnalyticField& field, const Point& at) {
  const auto f = field(Jet2::variable_r(at.r), Jet2::variable_theta(at.theta));
  VelocitySample s;
  s.at = at;
  for (int c = 0; c < 3; ++c) {
    s.velocity[c] = {f[c].v, f[c].r, f[c].t, f[c].rr, f[c].rt, f[c].tt};
  }
  s.p = f[3].v;
  s.p_r = f[3].r;
  s.p_theta = f[3].t;
  return s;
}

OracleResult cartesian_oracle(const AnalyticField& field, const Point& at,
                              const FlowParams& params, double h) {
  const PipeMap map(params.delta());
  const double alpha = params.alpha();
  const double re = params.reynolds();

  auto state = [&](const Vec3& x) {
    const auto q = map.inverse(x);
    const auto f = field(Jet2(q[0]), Jet2(q[1]));
    const Frame e = frame_at(q[1], q[3]);
    return CartesianState{f[0].v * e.er + f[1].v * e.et + f[2].v * e.es,
                          f[3].v - params.pstar() * q[2]};
  };
  // Row a = d/dx_a, column b = component b.
  auto gradient = [&](const Vec3& x) {
    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    for (int a = 0; a < 3; ++a) {
      for (int k = 0; k < 4; ++k) {
        Vec3 y = x;
        y[a] += kOffsets[k] * h;
        g.row(a) += kWeights[k] / h * state(y).u.transpose();
      }
    }
    return g;
  };
  auto flux = [&](const Vec3& x) {
    const Eigen::Matrix3d g = gradient(x);
    const CartesianState st = state(x);
    return Eigen::Matrix3d(alpha * g.transpose() * (g + g.transpose()) - alpha * st.p * g -
                           re * st.u * st.u.transpose());
  };

  const Vec3 x0 = map.forward(at.r, at.theta, 0.0);
  Vec3 div = Vec3::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int k = 0; k < 4; ++k) {
      Vec3 y = x0;
      y[a] += kOffsets[k] * h;
      div += kWeights[k] / h * flux(y).col(a);
    }
  }

  const Frame e = frame_at(at.theta, 0.0);
  Eigen::Matrix3d E;
  E.col(0) = e.er;
  E.col(1) = e.et;
  E.col(2) = e.es;
  OracleResult out;
  out.gradient = E.transpose() * gradient(x0) * E;
  out.force = E.transpose() * div;
  if (!out.gradient.allFinite() || !out.force.allFinite()) {
    throw Error(ErrorCategory::domain, "cartesian_oracle: non-finite result");
  }
  return out;
}

double cartesian_residual(const AnalyticField& field, const Point& at, const FlowParams& params,
                          double h) {
  const FrameVector f = force_divergence(sample_from_analytic(field, at), params);
  return (f - cartesian_oracle(field, at, params, h).force).lpNorm<Eigen::Infinity>();
}

}  // namespace curvedpipe
