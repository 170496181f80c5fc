#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace curvedpipe {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A point of the parametric cross-section (r, theta).
struct Point {
  double r = 0.0;
  double theta = 0.0;
};

enum class EdgeTag { interior, wall, axis };

/// Mesh edge. Side 0 always exists; side 1 is -1 on wall and axis edges.
/// normals[s] is the outward unit normal (n_r, n_theta) of element
/// elements[s]; local_edge[s] is the edge's local index in that element.
struct Edge {
  std::array<int, 2> vertices{};
  std::array<int, 2> elements{-1, -1};
  std::array<int, 2> local_edge{-1, -1};
  std::array<std::array<double, 2>, 2> normals{};
  EdgeTag tag = EdgeTag::interior;

  bool is_boundary() const noexcept { return elements[1] < 0; }
};

/// Structured triangulation of the periodic rectangle (0,1) x [0,2pi).
///
/// Vertices sit on r_i = i/nr, theta_j = 2 pi j / ntheta, indexed i*ntheta+j.
/// Cells with theta_j < pi are cut along the (i,j)-(i+1,j+1) diagonal and the
/// remaining cells along the mirrored diagonal, so the mesh maps onto itself
/// under theta -> -theta whenever ntheta is even. The seam theta = 0 ~ 2 pi is
/// identified; element_points() returns unwrapped coordinates so that each
/// triangle is a proper parametric triangle with positive orientation.
/// Local edge e of a triangle joins local vertices e and (e+1)%3.
class ParametricMesh {
 public:
  ParametricMesh(int nr, int ntheta);

  int nr() const noexcept { return nr_; }
  int ntheta() const noexcept { return ntheta_; }

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_elements() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const noexcept { return triangles_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  const std::array<Point, 3>& element_points(std::size_t k) const { return element_points_[k]; }
  const std::array<int, 3>& element_edges(std::size_t k) const { return element_edges_[k]; }
  double element_area(std::size_t k) const { return areas_[k]; }

  /// Neighbour across local edge e of element k, or -1 on the boundary.
  int neighbor(std::size_t k, int e) const;

  double max_edge_length() const;
  bool is_reflection_symmetric() const noexcept { return ntheta_ % 2 == 0; }

 private:
  int nr_;
  int ntheta_;
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<Point, 3>> element_points_;
  std::vector<std::array<int, 3>> element_edges_;
  std::vector<double> areas_;
  std::vector<Edge> edges_;
};

/// Throws curvedpipe::Error if nr < 2 or ntheta < 4.
ParametricMesh build_mesh(int nr, int ntheta);

/// Toroidal metric coefficients: B = 1 + r delta cos(theta),
/// B1 = r delta sin(theta), B2 = r delta cos(theta).
struct Metric {
  double B;
  double B1;
  double B2;
};

inline Metric metric(double r, double theta, double delta) {
  const double rd = r * delta;
  const double b2 = rd * std::cos(theta);
  return {1.0 + b2, rd * std::sin(theta), b2};
}

}  // namespace curvedpipe
