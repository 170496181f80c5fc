#pragma once

#include <array>
#include <functional>

#include "curvedpipe/curvilinear.hpp"
#include "curvedpipe/jet.hpp"

namespace curvedpipe {

/// Closed-form fully developed field: returns (u, v, w, p) with their
/// (r, theta) derivatives up to second order.
using AnalyticField = std::function<std::array<Jet2, 4>(const Jet2& r, const Jet2& theta)>;

VelocitySample sample_from_analytic(const AnalyticField& field, const Point& at);

/// Frame components of grad u and div T obtained independently of the
/// toroidal formulas: the field is pushed to Cartesian space through
/// x = (1/delta + r cos(theta)) cos(s delta), y = (1/delta + r cos(theta)) sin(s delta),
/// z = r sin(theta) (a cylinder when delta = 0), differentiated there by
/// fourth-order central differences and projected back onto the frame at s = 0.
struct OracleResult {
  FrameTensor gradient;
  FrameVector force;
};

OracleResult cartesian_oracle(const AnalyticField& field, const Point& at,
                              const FlowParams& params, double step = 1e-4);

/// Max-norm difference between force_divergence and the Cartesian oracle.
double cartesian_residual(const AnalyticField& field, const Point& at, const FlowParams& params,
                          double step = 1e-4);

}  // namespace curvedpipe
