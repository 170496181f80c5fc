#include "curvedpipe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvedpipe/error.hpp"
#include "curvedpipe/transport.hpp"

namespace curvedpipe {

namespace {

double relative_change(const Eigen::VectorXd& next, const Eigen::VectorXd& prev) {
  return (next - prev).norm() / std::max(next.norm(), 1e-30);
}

Eigen::VectorXd stacked_sigma(const SolverState& s) {
  const Eigen::Index n = s.sigma[0].coefficients.size();
  Eigen::VectorXd out(3 * n);
  for (int i = 0; i < 3; ++i) out.segment(i * n, n) = s.sigma[i].coefficients;
  return out;
}

Eigen::VectorXd stacked_velocity(const SolverState& s) {
  const Eigen::Index a = s.velocity.coefficients.size();
  const Eigen::Index b = s.w.coefficients.size();
  Eigen::VectorXd out(a + b);
  out << s.velocity.coefficients, s.w.coefficients;
  return out;
}

SolverState solve_stokes(const StokesOperator& stokes, const std::array<DiscreteField, 3>& sigma,
                         const FlowParams& params) {
  const StokesSolution sol = stokes.solve(stokes_rhs(stokes.discretization(), sigma, params));
  return SolverState{sol.velocity, sol.w, sol.p, sigma};
}

double advection_scale(const SolverState& s, double alpha) {
  return std::abs(alpha) * s.velocity.coefficients.lpNorm<Eigen::Infinity>();
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::max_iterations: return "max-iterations";
    case Termination::diverged: return "diverged";
  }
  return "unknown";
}

FixedPointResult fixed_point(const StokesOperator& stokes, const FlowParams& params,
                             const SolverState* init, const FixedPointOptions& options) {
  require(options.tol > 0.0, "fixed_point: tol must be > 0");
  require(options.max_iter >= 1, "fixed_point: max_iter must be >= 1");
  require(std::abs(params.delta() - stokes.delta()) == 0.0,
          "fixed_point: params.delta does not match the Stokes operator");
  const Discretization& disc = stokes.discretization();

  SolverState state = init ? *init : zero_state(disc);
  state = solve_stokes(stokes, state.sigma, params);

  FixedPointResult result;
  ConvergenceReport& rep = result.report;
  for (int it = 1; it <= options.max_iter; ++it) {
    const AdvectionField adv = discrete_advection(disc, state.velocity, params.alpha());
    const EdgeFluxData edges = classify_edges(disc, adv, params.delta());
    const SparseMatrix M = assemble_transport(disc, adv, params.delta(), edges);
    const auto G = assemble_sources(disc, state, params);
    std::array<DiscreteField, 3> sigma;
    rep.iterations = it;
    try {
      sigma = solve_transport(disc, M, G, advection_scale(state, params.alpha()));
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::linear_solver) throw;
      rep.residuals.push_back(std::numeric_limits<double>::infinity());
      rep.reason = Termination::diverged;
      break;
    }
    SolverState next = solve_stokes(stokes, sigma, params);

    const double res = std::max(relative_change(stacked_sigma(next), stacked_sigma(state)),
                                relative_change(stacked_velocity(next), stacked_velocity(state)));
    state = std::move(next);
    rep.iterations = it;
    rep.residuals.push_back(res);
    if (!std::isfinite(res) || res > options.divergence_bound) {
      rep.reason = Termination::diverged;
      break;
    }
    if (res <= options.tol) {
      rep.converged = true;
      rep.reason = Termination::converged;
      break;
    }
  }
  result.state = std::move(state);
  return result;
}

std::vector<FlowParams> ContinuationSchedule::waypoints(const FlowParams& start,
                                                        const FlowParams& target) const {
  require(d_reynolds > 0.0 && d_alpha > 0.0, "continuation steps must be > 0");
  const double dre = target.reynolds() - start.reynolds();
  const double dal = target.alpha() - start.alpha();
  const int n = std::max({1, static_cast<int>(std::ceil(std::abs(dre) / d_reynolds - 1e-12)),
                          static_cast<int>(std::ceil(std::abs(dal) / d_alpha - 1e-12))});
  std::vector<FlowParams> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    const double f = static_cast<double>(i) / n;
    out.emplace_back(target.delta(), start.reynolds() + f * dre, start.alpha() + f * dal,
                     target.pstar());
  }
  out.push_back(target);
  return out;
}

ContinuationResult continuation_solve(const StokesOperator& stokes, const FlowParams& target,
                                      const ContinuationSchedule& schedule,
                                      const FixedPointOptions& options, const SolverState* warm,
                                      const FlowParams* warm_params) {
  const FlowParams start = warm_params ? *warm_params
                                       : FlowParams(target.delta(), 0.0, 0.0, target.pstar());
  StreamFunctionRecovery stream(stokes.shared_discretization(), stokes.delta());

  ContinuationResult out;
  out.state = warm ? *warm : zero_state(stokes.discretization());
  out.reached = start;
  bool have_state = warm != nullptr;

  // Solves `to` from the current state; on failure splits the step.
  std::function<bool(const FlowParams&, int)> march = [&](const FlowParams& to, int depth) {
    FixedPointResult fp = fixed_point(stokes, to, have_state ? &out.state : nullptr, options);
    ContinuationStep step{to, fp.report, {}, depth};
    if (fp.report.converged) {
      step.extrema = extrema(stream.recover(fp.state.velocity), fp.state.w);
      out.steps.push_back(step);
      out.state = std::move(fp.state);
      out.reached = to;
      have_state = true;
      return true;
    }
    if (depth >= schedule.max_halvings) {
      step.extrema = extrema(stream.recover(fp.state.velocity), fp.state.w);
      out.steps.push_back(step);
      out.failed_step = out.steps.size() - 1;
      out.state = std::move(fp.state);
      return false;
    }
    const FlowParams from = out.reached;
    const FlowParams mid(to.delta(), 0.5 * (from.reynolds() + to.reynolds()),
                         0.5 * (from.alpha() + to.alpha()), to.pstar());
    return march(mid, depth + 1) && march(to, depth + 1);
  };

  for (const FlowParams& wp : schedule.waypoints(start, target)) {
    if (!march(wp, 0)) return out;
  }
  out.converged = true;
  return out;
}

double reconstructed_pressure(const VelocitySample& s, double alpha) {
  const double tangential = s.at.r > 0.0 ? s.velocity[1].v / s.at.r * s.p_theta : 0.0;
  return s.p + alpha * (s.velocity[0].v * s.p_r + tangential);
}

double equivalence_residual(const StokesOperator& stokes, const SolverState& state,
                            const FlowParams& params) {
  const Discretization& disc = stokes.discretization();
  const StokesRhs rhs = stokes_rhs(disc, state.sigma, params);
  const SaddleSystem& sad = stokes.secondary();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(sad.size());
  x.head(sad.n_velocity) = state.velocity.coefficients;
  x.segment(sad.n_velocity, sad.n_pressure) = state.p.coefficients;
  // The multiplier is not part of the state; it vanishes for a compatible
  // right-hand side, so the constraint rows are measured without it.
  const double stokes_res = (sad.matrix * x - rhs.secondary).norm();
  const double axial_res = (stokes.axial().matrix * state.w.coefficients - rhs.axial).norm();

  const AdvectionField adv = discrete_advection(disc, state.velocity, params.alpha());
  const EdgeFluxData edges = classify_edges(disc, adv, params.delta());
  const SparseMatrix M = assemble_transport(disc, adv, params.delta(), edges);
  const auto G = assemble_sources(disc, state, params);
  double transport_res = 0.0;
  for (int i = 0; i < 3; ++i) transport_res += (M * state.sigma[i].coefficients - G[i]).norm();

  const double scale = std::max(params.pstar() * stokes.axial().unit_forcing.norm(), 1e-300);
  return (stokes_res + axial_res + transport_res) / scale;
}

double divergence_residual(const StokesOperator& stokes, const SolverState& state) {
  const SaddleSystem& sad = stokes.secondary();
  const Eigen::VectorXd du = sad.divergence * state.velocity.coefficients;
  const Eigen::VectorXd& m = stokes.discretization().pressure()->mean_weights();
  const Eigen::VectorXd proj = du - m * (m.dot(du) / m.squaredNorm());
  return proj.norm() / std::max(state.velocity.coefficients.norm(), 1e-300);
}

}  // namespace curvedpipe
