#pragma once

#include <array>
#include <vector>

namespace curvedpipe {

/// Symmetric rule on the reference triangle {(0,0),(1,0),(0,1)}.
/// Weights sum to the reference area 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 3>> barycentric;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Dunavant rules; degree must be one of 2, 4, 6, 8.
QuadratureRule reference_quadrature(int degree);

/// Gauss-Legendre rule on [0,1] (weights sum to 1).
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};

LineRule gauss_legendre(int npoints);

}  // namespace curvedpipe
