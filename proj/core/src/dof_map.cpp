#include "curvedpipe/dof_map.hpp"

#include <cmath>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

std::span<const Tie> DofMap::ties(int node, int component) const {
  const std::size_t idx = static_cast<std::size_t>(component) * num_nodes() + node;
  return {ties_.data() + tie_offsets_[idx],
          static_cast<std::size_t>(tie_offsets_[idx + 1] - tie_offsets_[idx])};
}

Eigen::VectorXd DofMap::expand(const Eigen::VectorXd& free) const {
  require(static_cast<std::size_t>(free.size()) == n_free_, "DofMap::expand: size mismatch");
  const std::size_t n = num_nodes() * components_;
  Eigen::VectorXd nodal = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (int t = tie_offsets_[i]; t < tie_offsets_[i + 1]; ++t) {
      s += ties_[t].coefficient * free[ties_[t].dof];
    }
    nodal[static_cast<Eigen::Index>(i)] = s;
  }
  return nodal;
}

Eigen::VectorXd DofMap::reduce(const Eigen::VectorXd& nodal) const {
  const std::size_t n = num_nodes() * components_;
  require(static_cast<std::size_t>(nodal.size()) == n, "DofMap::reduce: size mismatch");
  Eigen::VectorXd free = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_free_));
  for (std::size_t i = 0; i < n; ++i) {
    for (int t = tie_offsets_[i]; t < tie_offsets_[i + 1]; ++t) {
      free[ties_[t].dof] += ties_[t].coefficient * nodal[static_cast<Eigen::Index>(i)];
    }
  }
  return free.cwiseProduct(reduce_scale_);
}

Eigen::SparseMatrix<double> DofMap::expansion() const {
  const std::size_t n = num_nodes() * components_;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(ties_.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (int t = tie_offsets_[i]; t < tie_offsets_[i + 1]; ++t) {
      triplets.emplace_back(static_cast<int>(i), ties_[t].dof, ties_[t].coefficient);
    }
  }
  Eigen::SparseMatrix<double> p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n_free_));
  p.setFromTriplets(triplets.begin(), triplets.end());
  return p;
}

namespace {

Point midpoint(const Point& a, const Point& b) {
  double ta = a.theta;
  double tb = b.theta;
  if (std::abs(ta - tb) > kPi) {
    if (ta < tb) ta += kTwoPi; else tb += kTwoPi;
  }
  double t = 0.5 * (ta + tb);
  if (t >= kTwoPi) t -= kTwoPi;
  return {0.5 * (a.r + b.r), t};
}

}  // namespace

DofMap build_dof_map(const ParametricMesh& mesh, SpaceKind space, AxisPolicy axis_policy) {
  if (axis_policy == AxisPolicy::vector_trig) {
    require(space == SpaceKind::p2_continuous,
            "build_dof_map: vector-trig axis policy requires the P2-continuous space");
  }
  if (space == SpaceKind::p1_discontinuous) {
    require(axis_policy == AxisPolicy::none,
            "build_dof_map: the P1-discontinuous space admits no axis policy");
  }

  DofMap map;
  map.space_ = space;
  map.axis_ = axis_policy;
  map.components_ = axis_policy == AxisPolicy::vector_trig ? 2 : 1;
  const std::size_t nv = mesh.num_vertices();
  const std::size_t ne = mesh.num_elements();

  switch (space) {
    case SpaceKind::p2_continuous: {
      map.nodes_per_element_ = 6;
      map.node_points_ = mesh.vertices();
      for (const Edge& e : mesh.edges()) {
        map.node_points_.push_back(
            midpoint(mesh.vertices()[e.vertices[0]], mesh.vertices()[e.vertices[1]]));
      }
      map.element_nodes_.reserve(ne * 6);
      for (std::size_t k = 0; k < ne; ++k) {
        for (int i = 0; i < 3; ++i) map.element_nodes_.push_back(mesh.triangles()[k][i]);
        for (int i = 0; i < 3; ++i) {
          map.element_nodes_.push_back(static_cast<int>(nv) + mesh.element_edges(k)[i]);
        }
      }
      break;
    }
    case SpaceKind::p1_continuous_zero_mean: {
      map.nodes_per_element_ = 3;
      map.node_points_ = mesh.vertices();
      map.element_nodes_.reserve(ne * 3);
      for (std::size_t k = 0; k < ne; ++k) {
        for (int i = 0; i < 3; ++i) map.element_nodes_.push_back(mesh.triangles()[k][i]);
      }
      break;
    }
    case SpaceKind::p1_discontinuous: {
      map.nodes_per_element_ = 3;
      map.node_points_.reserve(ne * 3);
      map.element_nodes_.reserve(ne * 3);
      for (std::size_t k = 0; k < ne; ++k) {
        for (int i = 0; i < 3; ++i) {
          const Point& p = mesh.element_points(k)[i];
          map.node_points_.push_back({p.r, std::fmod(p.theta, kTwoPi)});
          map.element_nodes_.push_back(static_cast<int>(3 * k + i));
        }
      }
      break;
    }
  }

  const std::size_t nn = map.node_points_.size();
  const bool wall_dirichlet = space == SpaceKind::p2_continuous;
  const int nc = map.components_;

  // Ties for every (component, node), assembled per node so the free
  // numbering interleaves components.
  std::vector<std::vector<Tie>> node_ties(nn * nc);
  int next = 0;
  int axis_master = -1;
  for (std::size_t n = 0; n < nn; ++n) {
    const Point& p = map.node_points_[n];
    const bool on_wall = p.r == 1.0;
    const bool on_axis = p.r == 0.0 && space != SpaceKind::p1_discontinuous;
    if (wall_dirichlet && on_wall) continue;
    if (on_axis && axis_policy == AxisPolicy::scalar_collapse) {
      if (axis_master < 0) axis_master = next++;
      node_ties[n].push_back({axis_master, 1.0});
    } else if (on_axis && axis_policy == AxisPolicy::vector_trig) {
      if (axis_master < 0) {
        axis_master = next;
        next += 2;
      }
      const double c = std::cos(p.theta);
      const double s = std::sin(p.theta);
      node_ties[n] = {{axis_master, c}, {axis_master + 1, s}};
      node_ties[nn + n] = {{axis_master, -s}, {axis_master + 1, c}};
    } else {
      for (int c = 0; c < nc; ++c) node_ties[c * nn + n].push_back({next++, 1.0});
    }
  }
  map.n_free_ = static_cast<std::size_t>(next);

  map.tie_offsets_.assign(nn * nc + 1, 0);
  for (std::size_t i = 0; i < nn * nc; ++i) {
    map.tie_offsets_[i + 1] = map.tie_offsets_[i] + static_cast<int>(node_ties[i].size());
    map.ties_.insert(map.ties_.end(), node_ties[i].begin(), node_ties[i].end());
  }

  // expand^T expand is diagonal for every tie pattern above (trig masters are
  // orthogonal over the axis nodes), which makes reduce() a scaled transpose.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(map.n_free_));
  for (const Tie& t : map.ties_) diag[t.dof] += t.coefficient * t.coefficient;
  map.reduce_scale_ = diag.cwiseInverse();

  if (space == SpaceKind::p1_continuous_zero_mean) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(map.n_free_));
    for (std::size_t k = 0; k < ne; ++k) {
      const double third = mesh.element_area(k) / 3.0;
      for (int i = 0; i < 3; ++i) {
        for (const Tie& t : map.ties(map.element_node(k, i))) m[t.dof] += t.coefficient * third;
      }
    }
    map.mean_weights_ = std::move(m);
  }
  return map;
}

}  // namespace curvedpipe
