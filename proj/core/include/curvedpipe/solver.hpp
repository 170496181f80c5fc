#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvedpipe/params.hpp"
#include "curvedpipe/postprocess.hpp"
#include "curvedpipe/state.hpp"
#include "curvedpipe/stokes.hpp"

namespace curvedpipe {

struct FixedPointOptions {
  double tol = 1e-8;
  int max_iter = 200;
  /// Iteration stops early once the residual exceeds this bound.
  double divergence_bound = 1e6;
};

enum class Termination { converged, max_iterations, diverged };

std::string to_string(Termination t);

struct ConvergenceReport {
  int iterations = 0;
  std::vector<double> residuals;  // one entry per iteration
  bool converged = false;
  Termination reason = Termination::max_iterations;
  double last_residual() const { return residuals.empty() ? 0.0 : residuals.back(); }
};

struct FixedPointResult {
  SolverState state;
  ConvergenceReport report;
};

/// Explicit fixed-point iteration: solve the Stokes problem from sigma^k, then
/// the transport problem for sigma^{k+1} with G evaluated at iterate k, then
/// the Stokes problem again. The residual is the larger of the relative
/// changes of sigma and of (u, v, w). The returned state always satisfies the
/// Stokes equations for its own sigma.
FixedPointResult fixed_point(const StokesOperator& stokes, const FlowParams& params,
                             const SolverState* init, const FixedPointOptions& options = {});

struct ContinuationSchedule {
  double d_reynolds = 1.0;
  double d_alpha = 0.05;
  int max_halvings = 4;

  /// Evenly spaced waypoints (Re, alpha) after `start`, ending exactly at `target`.
  std::vector<FlowParams> waypoints(const FlowParams& start, const FlowParams& target) const;
};

struct ContinuationStep {
  FlowParams params;
  ConvergenceReport report;
  ExtremaRecord extrema;
  int halvings = 0;
};

struct ContinuationResult {
  SolverState state;
  FlowParams reached;
  std::vector<ContinuationStep> steps;
  bool converged = false;
  /// Index into steps of the failing waypoint when !converged.
  std::optional<std::size_t> failed_step;
};

/// Marches the schedule from (0, 0), or from `warm` if given, to `target`,
/// warm-starting each fixed point from the previous state. A failing step is
/// halved up to schedule.max_halvings times.
ContinuationResult continuation_solve(const StokesOperator& stokes, const FlowParams& target,
                                      const ContinuationSchedule& schedule,
                                      const FixedPointOptions& options,
                                      const SolverState* warm = nullptr,
                                      const FlowParams* warm_params = nullptr);

/// Residual of the decoupled system evaluated on a state: the Stokes and axial
/// weak residuals plus the transport residual with the advecting field and G
/// both taken from the state itself, relative to the norm of the p* forcing.
double equivalence_residual(const StokesOperator& stokes, const SolverState& state,
                            const FlowParams& params);

/// Modified pressure pi = p + alpha (u p_r + (v/r) p_theta) at a point.
double reconstructed_pressure(const VelocitySample& sample, double alpha);

/// |D U| / |U| for the discrete divergence operator D, with the component
/// along the mean weights removed (constants are not in the zero-mean space).
double divergence_residual(const StokesOperator& stokes, const SolverState& state);

}  // namespace curvedpipe
