#include <doctest.h>

#include <cmath>
#include <map>

#include "curvedpipe/error.hpp"
#include "curvedpipe/solver.hpp"

using namespace curvedpipe;

TEST_CASE("sparse direct solves") {
  SparseMatrix I(4, 4);
  I.setIdentity();
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(4, 0);
  CHECK((solve_sparse(I, e1) - e1).norm() == 0.0);

  SparseMatrix S(3, 3);
  S.insert(0, 0) = 1.0;
  S.insert(1, 1) = 1.0;
  S.insert(2, 1) = 1.0;
  try {
    solve_sparse(S, Eigen::VectorXd::Ones(3));
    FAIL("expected a linear-solver error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::linear_solver);
  }
}

TEST_CASE("continuation waypoints") {
  const ContinuationSchedule sched;
  const FlowParams origin(0.2, 0.0, 0.0, 4.0);
  auto w = sched.waypoints(origin, FlowParams(0.2, 5.0, -0.5, 4.0));
  CHECK(w.size() == 10);
  CHECK(w.back().reynolds() == 5.0);
  CHECK(w.back().alpha() == -0.5);
  for (std::size_t i = 1; i < w.size(); ++i) {
    CHECK(w[i].reynolds() - w[i - 1].reynolds() <= 1.0 + 1e-12);
    CHECK(std::abs(w[i].alpha() - w[i - 1].alpha()) <= 0.05 + 1e-12);
  }
  w = sched.waypoints(origin, origin);
  CHECK(w.size() == 1);
}

TEST_CASE("creeping Newtonian flow is reached in one iteration") {
  auto disc = std::make_shared<const Discretization>(8, 24);
  const StokesOperator op(disc, 0.2);
  const FlowParams prm(0.2, 0.0, 0.0, 4.0);
  const FixedPointResult fp = fixed_point(op, prm, nullptr);
  CHECK(fp.report.converged);
  CHECK(fp.report.iterations == 1);
  CHECK(fp.report.reason == Termination::converged);
  CHECK(fp.state.velocity.coefficients.norm() <= 1e-12);
  for (const auto& s : fp.state.sigma) CHECK(s.coefficients.norm() == 0.0);
  CHECK(equivalence_residual(op, fp.state, prm) <= 1e-8);

  const ContinuationResult c = continuation_solve(op, prm, ContinuationSchedule{}, {});
  CHECK(c.converged);
  CHECK(c.steps.size() == 1);
  CHECK((c.state.w.coefficients - fp.state.w.coefficients).norm() == 0.0);
}

TEST_CASE("residual diagnostics") {
  auto disc = std::make_shared<const Discretization>(8, 24);
  const StokesOperator op(disc, 0.2);
  SolverState s = zero_state(*disc);
  CHECK(divergence_residual(op, s) == 0.0);

  // u = r (1 - r^2), v = 0 has nonzero weighted divergence.
  const DofMap& m = *disc->velocity();
  Eigen::VectorXd nodal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * m.num_nodes()));
  for (std::size_t n = 0; n < m.num_nodes(); ++n) {
    const double r = m.node_point(static_cast<int>(n)).r;
    nodal[static_cast<Eigen::Index>(n)] = r * (1.0 - r * r);
  }
  s.velocity = DiscreteField(disc->velocity(), m.reduce(nodal));
  CHECK(divergence_residual(op, s) > 1e-3);

  VelocitySample smp;
  smp.at = {0.5, 1.0};
  smp.velocity[0].v = 0.3;
  smp.velocity[1].v = -0.2;
  smp.p = 0.7;
  smp.p_r = 2.0;
  smp.p_theta = 1.5;
  CHECK(reconstructed_pressure(smp, 0.0) == 0.7);
  CHECK(reconstructed_pressure(smp, 0.1) == doctest::Approx(0.7 + 0.1 * (0.3 * 2.0 - 0.2 / 0.5 * 1.5)));
}

TEST_CASE("viscoelastic fixed point") {
  auto disc = std::make_shared<const Discretization>(16, 48);
  const StokesOperator op(disc, 0.2);
  const FlowParams prm(0.2, 5.0, 0.1, 4.0);
  const ContinuationResult c = continuation_solve(op, prm, ContinuationSchedule{}, FixedPointOptions{1e-8, 200});
  REQUIRE(c.converged);
  for (const ContinuationStep& s : c.steps) {
    CHECK(s.report.last_residual() <= 1e-8);
    CHECK(s.report.residuals.size() == static_cast<std::size_t>(s.report.iterations));
  }
  CHECK(equivalence_residual(op, c.state, prm) <= 1e-6);
  CHECK(divergence_residual(op, c.state) <= 1e-10);

  const FixedPointResult again = fixed_point(op, prm, &c.state);
  CHECK(again.report.converged);
  CHECK(again.report.iterations <= 2);

  const ContinuationResult twice = continuation_solve(op, prm, ContinuationSchedule{}, FixedPointOptions{1e-8, 200});
  CHECK((twice.state.velocity.coefficients - c.state.velocity.coefficients).norm() == 0.0);
}

TEST_CASE("Newtonian state is mirror symmetric") {
  auto disc = std::make_shared<const Discretization>(16, 48);
  const StokesOperator op(disc, 0.2);
  const ContinuationResult c = continuation_solve(op, FlowParams(0.2, 5.0, 0.0, 4.0), ContinuationSchedule{}, {});
  REQUIRE(c.converged);
  const Eigen::VectorXd uv = c.state.velocity.nodal();
  const Eigen::VectorXd w = c.state.w.nodal();
  const DofMap& vm = *disc->velocity();
  const DofMap& sm = *disc->scalar();
  auto index_of = [](const DofMap& m) {
    std::map<std::pair<long, long>, std::size_t> idx;
    for (std::size_t n = 0; n < m.num_nodes(); ++n) {
      const Point& p = m.node_point(static_cast<int>(n));
      idx[{std::lround(p.r * 1e8), std::lround(std::fmod(p.theta + kTwoPi, kTwoPi) * 1e8)}] = n;
    }
    return idx;
  };
  auto mirror = [](const Point& p) {
    const double t = std::fmod(kTwoPi - p.theta + kTwoPi, kTwoPi);
    return std::pair<long, long>{std::lround(p.r * 1e8), std::lround(t * 1e8) % std::lround(kTwoPi * 1e8)};
  };
  const auto vidx = index_of(vm);
  const std::size_t nn = vm.num_nodes();
  double du = 0.0;
  double dv = 0.0;
  double scale = uv.lpNorm<Eigen::Infinity>();
  for (std::size_t n = 0; n < nn; ++n) {
    const Point& p = vm.node_point(static_cast<int>(n));
    auto it = vidx.find(mirror(p));
    if (it == vidx.end()) continue;
    du = std::max(du, std::abs(uv[static_cast<Eigen::Index>(n)] - uv[static_cast<Eigen::Index>(it->second)]));
    dv = std::max(dv, std::abs(uv[static_cast<Eigen::Index>(nn + n)] + uv[static_cast<Eigen::Index>(nn + it->second)]));
  }
  const auto sidx = index_of(sm);
  double dw = 0.0;
  for (std::size_t n = 0; n < sm.num_nodes(); ++n) {
    auto it = sidx.find(mirror(sm.node_point(static_cast<int>(n))));
    if (it == sidx.end()) continue;
    dw = std::max(dw, std::abs(w[static_cast<Eigen::Index>(n)] - w[static_cast<Eigen::Index>(it->second)]));
  }
  CHECK(du <= 1e-8 * scale);
  CHECK(dv <= 1e-8 * scale);
  CHECK(dw <= 1e-8);
}
