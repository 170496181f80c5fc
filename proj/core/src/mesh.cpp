#include "curvedpipe/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

std::array<double, 2> outward_normal(const Point& a, const Point& b) {
  // Counter-clockwise element: the outward normal of a->b is (d_theta, -d_r).
  const double dr = b.r - a.r;
  const double dt = b.theta - a.theta;
  const double len = std::hypot(dr, dt);
  return {dt / len, -dr / len};
}

}  // namespace

ParametricMesh::ParametricMesh(int nr, int ntheta) : nr_(nr), ntheta_(ntheta) {
  require(nr >= 2, "build_mesh: nr must be >= 2 (got " + std::to_string(nr) + ")");
  require(ntheta >= 4, "build_mesh: ntheta must be >= 4 (got " + std::to_string(ntheta) + ")");

  const double dtheta = kTwoPi / ntheta;
  vertices_.reserve(static_cast<std::size_t>((nr + 1) * ntheta));
  for (int i = 0; i <= nr; ++i) {
    for (int j = 0; j < ntheta; ++j) {
      vertices_.push_back({static_cast<double>(i) / nr, j * dtheta});
    }
  }

  auto vid = [ntheta](int i, int j) { return i * ntheta + (j % ntheta); };
  auto unwrapped = [&](int i, int j) {
    return Point{static_cast<double>(i) / nr, j * dtheta};
  };

  triangles_.reserve(static_cast<std::size_t>(2 * nr * ntheta));
  element_points_.reserve(triangles_.capacity());
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < ntheta; ++j) {
      const bool lower_half = 2 * j < ntheta;
      if (lower_half) {
        // diagonal (i,j)-(i+1,j+1)
        triangles_.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
        element_points_.push_back({unwrapped(i, j), unwrapped(i + 1, j), unwrapped(i + 1, j + 1)});
        triangles_.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        element_points_.push_back({unwrapped(i, j), unwrapped(i + 1, j + 1), unwrapped(i, j + 1)});
      } else {
        // mirrored diagonal (i+1,j)-(i,j+1)
        triangles_.push_back({vid(i, j), vid(i + 1, j), vid(i, j + 1)});
        element_points_.push_back({unwrapped(i, j), unwrapped(i + 1, j), unwrapped(i, j + 1)});
        triangles_.push_back({vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
        element_points_.push_back({unwrapped(i + 1, j), unwrapped(i + 1, j + 1), unwrapped(i, j + 1)});
      }
    }
  }

  areas_.reserve(triangles_.size());
  for (const auto& p : element_points_) {
    const double a = 0.5 * ((p[1].r - p[0].r) * (p[2].theta - p[0].theta) -
                            (p[2].r - p[0].r) * (p[1].theta - p[0].theta));
    if (!(a > 0.0)) throw Error(ErrorCategory::internal, "build_mesh: non-positive element area");
    areas_.push_back(a);
  }

  std::map<std::pair<int, int>, int> lookup;
  element_edges_.resize(triangles_.size());
  for (std::size_t k = 0; k < triangles_.size(); ++k) {
    for (int e = 0; e < 3; ++e) {
      const int a = triangles_[k][e];
      const int b = triangles_[k][(e + 1) % 3];
      const auto key = std::minmax(a, b);
      const auto normal = outward_normal(element_points_[k][e], element_points_[k][(e + 1) % 3]);
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        Edge edge;
        edge.vertices = {a, b};
        edge.elements[0] = static_cast<int>(k);
        edge.local_edge[0] = e;
        edge.normals[0] = normal;
        lookup.emplace(key, static_cast<int>(edges_.size()));
        element_edges_[k][e] = static_cast<int>(edges_.size());
        edges_.push_back(edge);
      } else {
        Edge& edge = edges_[it->second];
        if (edge.elements[1] >= 0) {
          throw Error(ErrorCategory::internal, "build_mesh: edge shared by more than two elements");
        }
        edge.elements[1] = static_cast<int>(k);
        edge.local_edge[1] = e;
        edge.normals[1] = normal;
        element_edges_[k][e] = it->second;
      }
    }
  }

  for (Edge& edge : edges_) {
    if (!edge.is_boundary()) continue;
    const double ra = vertices_[edge.vertices[0]].r;
    const double rb = vertices_[edge.vertices[1]].r;
    if (ra == 1.0 && rb == 1.0) {
      edge.tag = EdgeTag::wall;
    } else if (ra == 0.0 && rb == 0.0) {
      edge.tag = EdgeTag::axis;
    } else {
      throw Error(ErrorCategory::internal, "build_mesh: boundary edge off the wall and axis");
    }
  }
}

int ParametricMesh::neighbor(std::size_t k, int e) const {
  const Edge& edge = edges_[element_edges_[k][e]];
  return edge.elements[0] == static_cast<int>(k) ? edge.elements[1] : edge.elements[0];
}

double ParametricMesh::max_edge_length() const {
  double h = 0.0;
  for (std::size_t k = 0; k < element_points_.size(); ++k) {
    const auto& p = element_points_[k];
    for (int e = 0; e < 3; ++e) {
      const auto& a = p[e];
      const auto& b = p[(e + 1) % 3];
      h = std::max(h, std::hypot(b.r - a.r, b.theta - a.theta));
    }
  }
  return h;
}

ParametricMesh build_mesh(int nr, int ntheta) { return ParametricMesh(nr, ntheta); }

}  // namespace curvedpipe
