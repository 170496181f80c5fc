#pragma once

#include <array>

#include "curvedpipe/curvilinear.hpp"
#include "curvedpipe/discretization.hpp"

namespace curvedpipe {

/// One iterate (u, v, w, p, sigma1, sigma2, sigma3). The secondary velocity
/// (u, v) is a single two-component field on Discretization::velocity().
/// sigma_i = (rB)^2 rho_i.
struct SolverState {
  DiscreteField velocity;
  DiscreteField w;
  DiscreteField p;
  std::array<DiscreteField, 3> sigma;
};

SolverState zero_state(const Discretization& disc);

/// Pointwise evaluation of a state on its mesh; caches the nodal vectors.
class StateEvaluator {
 public:
  StateEvaluator(const Discretization& disc, const SolverState& state);

  VelocitySample sample(std::size_t k, const QuadraturePoint& qp) const;
  VelocitySample sample(std::size_t k, const Barycentric& b) const;
  std::array<double, 3> sigma(std::size_t k, const std::array<ScalarJet, 3>& p1) const;
  /// (u, v) with first derivatives.
  std::array<ScalarJet, 2> secondary(std::size_t k, const std::array<ScalarJet, 6>& p2) const;

 private:
  VelocitySample make(std::size_t k, const Point& at, const std::array<ScalarJet, 6>& p2,
                      const std::array<ScalarJet, 3>& p1) const;

  const Discretization* disc_;
  Eigen::VectorXd uv_, w_, p_;
  std::array<Eigen::VectorXd, 3> sigma_;
};

}  // namespace curvedpipe
