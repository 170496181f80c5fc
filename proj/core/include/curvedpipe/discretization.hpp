#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "curvedpipe/dof_map.hpp"
#include "curvedpipe/element.hpp"
#include "curvedpipe/mesh.hpp"
#include "curvedpipe/quadrature.hpp"

namespace curvedpipe {

/// Coefficients over the free unknowns of a DofMap.
struct DiscreteField {
  std::shared_ptr<const DofMap> map;
  Eigen::VectorXd coefficients;

  DiscreteField() = default;
  explicit DiscreteField(std::shared_ptr<const DofMap> m)
      : map(std::move(m)), coefficients(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(map->num_free()))) {}
  DiscreteField(std::shared_ptr<const DofMap> m, Eigen::VectorXd c);

  SpaceKind space() const { return map->space(); }
  Eigen::VectorXd nodal() const { return map->expand(coefficients); }
};

/// Volume quadrature point of one element with the basis already evaluated.
struct QuadraturePoint {
  Barycentric bary;
  Point at;
  double weight;  // includes the element Jacobian
  std::array<ScalarJet, 6> p2;
  std::array<ScalarJet, 3> p1;
};

/// Mesh, the four finite element spaces and per-element quadrature data.
///
///  - velocity(): P2, two components (u, v), vector-trig axis tie.
///  - scalar():   P2, scalar axis collapse (w and the stream function).
///  - pressure(): P1 continuous with zero mean.
///  - stress():   P1 discontinuous.
class Discretization {
 public:
  Discretization(int nr, int ntheta, int quadrature_degree = 6);

  const ParametricMesh& mesh() const noexcept { return mesh_; }
  const std::shared_ptr<const DofMap>& velocity() const noexcept { return velocity_; }
  const std::shared_ptr<const DofMap>& scalar() const noexcept { return scalar_; }
  const std::shared_ptr<const DofMap>& pressure() const noexcept { return pressure_; }
  const std::shared_ptr<const DofMap>& stress() const noexcept { return stress_; }

  const ElementGeometry& geometry(std::size_t k) const { return geometry_[k]; }
  std::span<const QuadraturePoint> points(std::size_t k) const {
    return {points_.data() + k * per_element_, per_element_};
  }
  int quadrature_degree() const noexcept { return degree_; }

 private:
  ParametricMesh mesh_;
  int degree_;
  std::shared_ptr<const DofMap> velocity_;
  std::shared_ptr<const DofMap> scalar_;
  std::shared_ptr<const DofMap> pressure_;
  std::shared_ptr<const DofMap> stress_;
  std::vector<ElementGeometry> geometry_;
  std::size_t per_element_ = 0;
  std::vector<QuadraturePoint> points_;
};

/// Nodal values of one component restricted to element k.
template <std::size_t N>
std::array<double, N> gather(const DofMap& map, const Eigen::VectorXd& nodal, std::size_t k,
                             int component = 0) {
  std::array<double, N> out{};
  const std::size_t offset = static_cast<std::size_t>(component) * map.num_nodes();
  const auto nodes = map.element_nodes(k);
  for (std::size_t i = 0; i < N; ++i) out[i] = nodal[static_cast<Eigen::Index>(offset + nodes[i])];
  return out;
}

}  // namespace curvedpipe
