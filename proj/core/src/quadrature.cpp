#include "curvedpipe/quadrature.hpp"

#include <cmath>
#include <string>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

// Weights below are normalised to sum to one and halved on insertion.
void add_centroid(QuadratureRule& q, double w) {
  q.barycentric.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  q.weights.push_back(0.5 * w);
}

void add_orbit3(QuadratureRule& q, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  q.barycentric.push_back({a, a, b});
  q.barycentric.push_back({a, b, a});
  q.barycentric.push_back({b, a, a});
  for (int i = 0; i < 3; ++i) q.weights.push_back(0.5 * w);
}

void add_orbit6(QuadratureRule& q, double a, double b, double w) {
  const double c = 1.0 - a - b;
  q.barycentric.push_back({a, b, c});
  q.barycentric.push_back({a, c, b});
  q.barycentric.push_back({b, a, c});
  q.barycentric.push_back({b, c, a});
  q.barycentric.push_back({c, a, b});
  q.barycentric.push_back({c, b, a});
  for (int i = 0; i < 6; ++i) q.weights.push_back(0.5 * w);
}

}  // namespace

QuadratureRule reference_quadrature(int degree) {
  QuadratureRule q;
  q.degree = degree;
  switch (degree) {
    case 2:
      add_orbit3(q, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 4:
      add_orbit3(q, 0.44594849091596488632, 0.22338158967801146570);
      add_orbit3(q, 0.09157621350977074346, 0.10995174365532186764);
      break;
    case 6:
      add_orbit3(q, 0.24928674517091042129, 0.11678627572637936603);
      add_orbit3(q, 0.06308901449150222834, 0.05084490637020681692);
      add_orbit6(q, 0.31035245103378440542, 0.63650249912139864723, 0.08285107561837357519);
      break;
    case 8:
      add_centroid(q, 0.14431560767778716825);
      add_orbit3(q, 0.45929258829272315603, 0.09509163426728462479);
      add_orbit3(q, 0.17056930775176020663, 0.10321737053471825028);
      add_orbit3(q, 0.05054722831703097546, 0.03245849762319808031);
      add_orbit6(q, 0.26311282963463811342, 0.72849239295540428124, 0.02723031417443499426);
      break;
    default:
      throw Error(ErrorCategory::domain,
                  "reference_quadrature: unsupported degree " + std::to_string(degree) +
                      " (supported: 2, 4, 6, 8)");
  }
  return q;
}

LineRule gauss_legendre(int npoints) {
  LineRule rule;
  switch (npoints) {
    case 1:
      rule.points = {0.5};
      rule.weights = {1.0};
      break;
    case 2: {
      const double d = 0.5 / std::sqrt(3.0);
      rule.points = {0.5 - d, 0.5 + d};
      rule.weights = {0.5, 0.5};
      break;
    }
    case 3: {
      const double d = 0.5 * std::sqrt(0.6);
      rule.points = {0.5 - d, 0.5, 0.5 + d};
      rule.weights = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
      break;
    }
    default:
      throw Error(ErrorCategory::domain,
                  "gauss_legendre: unsupported point count " + std::to_string(npoints));
  }
  return rule;
}

}  // namespace curvedpipe
