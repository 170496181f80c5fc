#include "curvedpipe/discretization.hpp"

#include "curvedpipe/error.hpp"

namespace curvedpipe {

DiscreteField::DiscreteField(std::shared_ptr<const DofMap> m, Eigen::VectorXd c)
    : map(std::move(m)), coefficients(std::move(c)) {
  require(static_cast<std::size_t>(coefficients.size()) == map->num_free(),
          "DiscreteField: coefficient length does not match the dof map");
}

Discretization::Discretization(int nr, int ntheta, int quadrature_degree)
    : mesh_(build_mesh(nr, ntheta)), degree_(quadrature_degree) {
  velocity_ = std::make_shared<const DofMap>(
      build_dof_map(mesh_, SpaceKind::p2_continuous, AxisPolicy::vector_trig));
  scalar_ = std::make_shared<const DofMap>(
      build_dof_map(mesh_, SpaceKind::p2_continuous, AxisPolicy::scalar_collapse));
  pressure_ = std::make_shared<const DofMap>(
      build_dof_map(mesh_, SpaceKind::p1_continuous_zero_mean, AxisPolicy::scalar_collapse));
  stress_ = std::make_shared<const DofMap>(
      build_dof_map(mesh_, SpaceKind::p1_discontinuous, AxisPolicy::none));

  const QuadratureRule rule = reference_quadrature(quadrature_degree);
  per_element_ = rule.size();
  const std::size_t ne = mesh_.num_elements();
  geometry_.reserve(ne);
  points_.reserve(ne * per_element_);
  for (std::size_t k = 0; k < ne; ++k) {
    const ElementGeometry& g = geometry_.emplace_back(mesh_.element_points(k));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Barycentric& b = rule.barycentric[q];
      QuadraturePoint qp;
      qp.bary = b;
      qp.at = g.map(b);
      qp.weight = 2.0 * g.area() * rule.weights[q];
      qp.p2 = p2_basis(g, b);
      qp.p1 = p1_basis(g, b);
      points_.push_back(qp);
    }
  }
}

}  // namespace curvedpipe
