#pragma once

#include <array>
#include <functional>
#include <vector>

#include "curvedpipe/discretization.hpp"
#include "curvedpipe/linear_solver.hpp"
#include "curvedpipe/params.hpp"
#include "curvedpipe/quadrature.hpp"
#include "curvedpipe/state.hpp"

namespace curvedpipe {

/// Advecting field (a, b) with the derivatives entering the divergence term.
/// The weights rB and B are applied by the forms, not stored here.
struct AdvectionSample {
  double a = 0.0;
  double a_r = 0.0;
  double b = 0.0;
  double b_theta = 0.0;
};

using AdvectionField =
    std::function<AdvectionSample(std::size_t element, const Barycentric& bary, const Point& at)>;

/// (alpha u, alpha v) of a discrete velocity.
AdvectionField discrete_advection(const Discretization& disc, const DiscreteField& velocity,
                                  double alpha);

/// Weighted normal flux phi = rB a n_r + B b n_theta at three Gauss points per
/// edge, seen from side 0. Side 1 sees -phi at the same points.
struct EdgeFluxData {
  LineRule rule;
  std::vector<std::array<double, 3>> flux;
  std::vector<bool> two_sided;

  double side_flux(std::size_t edge, int side, int q) const {
    return side == 0 ? flux[edge][q] : -flux[edge][q];
  }
  bool inflow(std::size_t edge, int side, int q) const { return side_flux(edge, side, q) < 0.0; }
  /// Number of (edge point, side) pairs flagged as inflow.
  std::size_t inflow_count() const;
};

EdgeFluxData classify_edges(const Discretization& disc, const AdvectionField& field, double delta);
EdgeFluxData classify_edges(const Discretization& disc, const DiscreteField& velocity, double alpha,
                            double delta);

enum class TransportForm {
  /// (a rB sigma_r + b B sigma_theta, tau) + 1/2 (div sigma, tau) - <sigma+ - sigma-, tau+>
  original,
  /// -(sigma, rB a tau_r + B b tau_theta) - 1/2 (div tau, sigma) + <sigma-, tau+ - tau->
  integrated_by_parts,
};

/// (rB sigma, tau) + B_h(a, b, sigma, tau) over the P1-discontinuous space;
/// with include_mass = false only B_h is assembled.
SparseMatrix assemble_transport(const Discretization& disc, const AdvectionField& field,
                                double delta, const EdgeFluxData& edges,
                                TransportForm form = TransportForm::original,
                                bool include_mass = true);

/// (G_i(u, p, sigma), tau) for i = 1, 2, 3, with sigma taken from the state.
std::array<Eigen::VectorXd, 3> assemble_sources(const Discretization& disc,
                                                const SolverState& state,
                                                const FlowParams& params);

/// (g, tau) for a pointwise load.
Eigen::VectorXd assemble_load(const Discretization& disc,
                              const std::function<double(const Point&)>& g);

/// Three solves against one factorization. `advection_scale` (alpha times a
/// velocity norm) is reported if the factorization fails.
std::array<DiscreteField, 3> solve_transport(const Discretization& disc, const SparseMatrix& matrix,
                                             const std::array<Eigen::VectorXd, 3>& rhs,
                                             double advection_scale = 0.0);

}  // namespace curvedpipe
