#include "curvedpipe/state.hpp"

namespace curvedpipe {

SolverState zero_state(const Discretization& disc) {
  SolverState s;
  s.velocity = DiscreteField(disc.velocity());
  s.w = DiscreteField(disc.scalar());
  s.p = DiscreteField(disc.pressure());
  for (auto& sg : s.sigma) sg = DiscreteField(disc.stress());
  return s;
}

StateEvaluator::StateEvaluator(const Discretization& disc, const SolverState& state)
    : disc_(&disc), uv_(state.velocity.nodal()), w_(state.w.nodal()), p_(state.p.nodal()) {
  for (int i = 0; i < 3; ++i) sigma_[i] = state.sigma[i].nodal();
}

VelocitySample StateEvaluator::make(std::size_t k, const Point& at,
                                    const std::array<ScalarJet, 6>& p2,
                                    const std::array<ScalarJet, 3>& p1) const {
  VelocitySample s;
  s.at = at;
  const DofMap& vel = *disc_->velocity();
  s.velocity[0] = combine(p2, gather<6>(vel, uv_, k, 0));
  s.velocity[1] = combine(p2, gather<6>(vel, uv_, k, 1));
  s.velocity[2] = combine(p2, gather<6>(*disc_->scalar(), w_, k));
  const ScalarJet p = combine(p1, gather<3>(*disc_->pressure(), p_, k));
  s.p = p.v;
  s.p_r = p.r;
  s.p_theta = p.t;
  return s;
}

VelocitySample StateEvaluator::sample(std::size_t k, const QuadraturePoint& qp) const {
  return make(k, qp.at, qp.p2, qp.p1);
}

VelocitySample StateEvaluator::sample(std::size_t k, const Barycentric& b) const {
  const ElementGeometry& g = disc_->geometry(k);
  return make(k, g.map(b), p2_basis(g, b), p1_basis(g, b));
}

std::array<double, 3> StateEvaluator::sigma(std::size_t k, const std::array<ScalarJet, 3>& p1) const {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = combine(p1, gather<3>(*disc_->stress(), sigma_[i], k)).v;
  return out;
}

std::array<ScalarJet, 2> StateEvaluator::secondary(std::size_t k,
                                                   const std::array<ScalarJet, 6>& p2) const {
  const DofMap& vel = *disc_->velocity();
  return {combine(p2, gather<6>(vel, uv_, k, 0)), combine(p2, gather<6>(vel, uv_, k, 1))};
}

}  // namespace curvedpipe
