#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "curvedpipe/mesh.hpp"

namespace curvedpipe {

enum class SpaceKind { p2_continuous, p1_continuous_zero_mean, p1_discontinuous };

/// How nodes on the axis r = 0 are tied together.
///  - scalar_collapse: every axis node carries one shared unknown.
///  - vector_trig: a two-component (u, v) field whose axis values are
///    u = a cos(theta) + b sin(theta), v = -a sin(theta) + b cos(theta).
enum class AxisPolicy { none, scalar_collapse, vector_trig };

/// Affine tie of one nodal value to a free unknown.
struct Tie {
  int dof;
  double coefficient;
};

/// Degrees of freedom of one finite element space on a ParametricMesh.
///
/// Nodal values are indexed component-major: component c of node n sits at
/// c * num_nodes() + n. Each nodal value expands to a (possibly empty) list of
/// ties onto free unknowns; an empty list is a homogeneous Dirichlet value.
/// Continuous P2 spaces vanish on the wall r = 1. The theta seam is identified
/// in the mesh topology, so periodicity needs no explicit tie.
class DofMap {
 public:
  SpaceKind space() const noexcept { return space_; }
  AxisPolicy axis_policy() const noexcept { return axis_; }
  int components() const noexcept { return components_; }
  int nodes_per_element() const noexcept { return nodes_per_element_; }
  std::size_t num_elements() const noexcept { return element_nodes_.size() / nodes_per_element_; }
  std::size_t num_nodes() const noexcept { return node_points_.size(); }
  std::size_t num_free() const noexcept { return n_free_; }

  int element_node(std::size_t k, int local) const {
    return element_nodes_[k * nodes_per_element_ + local];
  }
  std::span<const int> element_nodes(std::size_t k) const {
    return {element_nodes_.data() + k * nodes_per_element_,
            static_cast<std::size_t>(nodes_per_element_)};
  }
  const Point& node_point(int node) const { return node_points_[node]; }
  std::span<const Tie> ties(int node, int component = 0) const;
  bool is_dirichlet(int node) const { return ties(node, 0).empty(); }

  /// Integral of each free basis function over the rectangle (dr dtheta).
  /// Only populated for the zero-mean P1 space.
  const Eigen::VectorXd& mean_weights() const noexcept { return mean_weights_; }

  Eigen::VectorXd expand(const Eigen::VectorXd& free) const;
  /// Left inverse of expand(): exact on the range of expand().
  Eigen::VectorXd reduce(const Eigen::VectorXd& nodal) const;
  /// Sparse expansion operator (components * num_nodes) x num_free.
  Eigen::SparseMatrix<double> expansion() const;

 private:
  friend DofMap build_dof_map(const ParametricMesh&, SpaceKind, AxisPolicy);

  SpaceKind space_ = SpaceKind::p2_continuous;
  AxisPolicy axis_ = AxisPolicy::none;
  int components_ = 1;
  int nodes_per_element_ = 6;
  std::size_t n_free_ = 0;
  std::vector<int> element_nodes_;
  std::vector<Point> node_points_;
  std::vector<int> tie_offsets_;
  std::vector<Tie> ties_;
  Eigen::VectorXd reduce_scale_;
  Eigen::VectorXd mean_weights_;
};

/// Throws curvedpipe::Error for vector_trig on a non-P2 space and for any
/// axis policy other than none on the discontinuous space.
DofMap build_dof_map(const ParametricMesh& mesh, SpaceKind space, AxisPolicy axis_policy);

}  // namespace curvedpipe
