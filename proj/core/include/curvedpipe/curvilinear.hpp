#pragma once

#include <array>

#include <Eigen/Core>

#include "curvedpipe/element.hpp"
#include "curvedpipe/params.hpp"

namespace curvedpipe {

/// Tensor components in the orthonormal frame (e_r, e_theta, e_s).
/// For gradient-type tensors the row index is the direction of
/// differentiation: G(i, j) = ((e_i . grad) u) . e_j. Divergences contract
/// the second index.
using FrameTensor = Eigen::Matrix3d;
using FrameVector = Eigen::Vector3d;

/// A fully developed velocity (u, v, w) and pressure at one point. Nothing
/// depends on s, so no axial derivatives are stored.
struct VelocitySample {
  Point at;
  std::array<ScalarJet, 3> velocity;  // u (radial), v (azimuthal), w (axial)
  double p = 0.0;
  double p_r = 0.0;
  double p_theta = 0.0;
};

/// Frame components of grad u for scale factors (1, r, B). At r = 0 the
/// azimuthal row is replaced by its limit, which exists when the sample
/// comes from a field that is single-valued on the axis.
FrameTensor velocity_gradient(const VelocitySample& sample, double delta);

/// L(u) = alpha G^T (G + G^T), with G the row-differentiation gradient above.
FrameTensor extra_stress(const FrameTensor& gradu, double alpha);

/// T = L(u) - alpha p G - Re u (x) u, with p the cross-section pressure.
/// The pressure term is oriented so that div(p G) = grad(u . grad p) - u . grad(grad p)
/// for solenoidal u.
FrameTensor total_flux_tensor(const VelocitySample& sample, const FrameTensor& gradu,
                              const FlowParams& params);

/// F = div T in the toroidal frame, evaluated on the cross-section s = 0.
///
/// The full pressure is p(r, theta) - p* s, so besides the divergence of the
/// s-independent flux tensor F carries the term alpha p* G(i, s) / B coming
/// from the axial pressure gradient. Requires r > 0.
FrameVector force_divergence(const VelocitySample& sample, const FlowParams& params);

/// Trace of the velocity gradient: u_r + v_theta / r + ((B + B2) u - B1 v) / (r B).
double velocity_divergence(const VelocitySample& sample, double delta);

/// Left-hand side of the fully developed Stokes system (momentum rows without
/// the p* forcing), i.e. -Laplacian(u) + grad(p) in frame components.
FrameVector stokes_operator(const VelocitySample& sample, double delta);

}  // namespace curvedpipe
