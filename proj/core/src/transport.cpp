#include "curvedpipe/transport.hpp"

#include <cmath>
#include <string>

#include "curvedpipe/curvilinear.hpp"
#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// Barycentric coordinates in element `k` of the point at parameter t along
// `edge`, measured from edge.vertices[0].
Barycentric edge_point(const ParametricMesh& mesh, const Edge& edge, int side, double t) {
  const std::size_t k = static_cast<std::size_t>(edge.elements[side]);
  const int le = edge.local_edge[side];
  Barycentric b{0.0, 0.0, 0.0};
  const bool forward = mesh.triangles()[k][le] == edge.vertices[0];
  b[le] = forward ? 1.0 - t : t;
  b[(le + 1) % 3] = forward ? t : 1.0 - t;
  return b;
}

double edge_length(const ParametricMesh& mesh, const Edge& edge) {
  const auto& p = mesh.element_points(static_cast<std::size_t>(edge.elements[0]));
  const int le = edge.local_edge[0];
  const Point& a = p[le];
  const Point& b = p[(le + 1) % 3];
  return std::hypot(b.r - a.r, b.theta - a.theta);
}

std::array<double, 3> p1_values(const Barycentric& b) { return {b[0], b[1], b[2]}; }

}  // namespace

std::size_t EdgeFluxData::inflow_count() const {
  std::size_t n = 0;
  for (std::size_t e = 0; e < flux.size(); ++e) {
    for (double v : flux[e]) n += (v < 0.0 || (v > 0.0 && two_sided[e])) ? 1 : 0;
  }
  return n;
}

AdvectionField discrete_advection(const Discretization& disc, const DiscreteField& velocity,
                                  double alpha) {
  const DofMap& vel = *disc.velocity();
  Eigen::VectorXd nodal = velocity.nodal();
  return [&disc, &vel, nodal = std::move(nodal), alpha](std::size_t k, const Barycentric& b,
                                                        const Point&) {
    const auto basis = p2_basis(disc.geometry(k), b);
    const ScalarJet u = combine(basis, gather<6>(vel, nodal, k, 0));
    const ScalarJet v = combine(basis, gather<6>(vel, nodal, k, 1));
    return AdvectionSample{alpha * u.v, alpha * u.r, alpha * v.v, alpha * v.t};
  };
}

EdgeFluxData classify_edges(const Discretization& disc, const AdvectionField& field, double delta) {
  const ParametricMesh& mesh = disc.mesh();
  EdgeFluxData data;
  data.rule = gauss_legendre(3);
  data.flux.resize(mesh.num_edges());
  data.two_sided.resize(mesh.num_edges());
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    const std::size_t k = static_cast<std::size_t>(edge.elements[0]);
    const auto& n = edge.normals[0];
    data.two_sided[e] = !edge.is_boundary();
    for (int q = 0; q < 3; ++q) {
      const Barycentric b = edge_point(mesh, edge, 0, data.rule.points[q]);
      const Point at = disc.geometry(k).map(b);
      const AdvectionSample s = field(k, b, at);
      const Metric m = metric(at.r, at.theta, delta);
      data.flux[e][q] = at.r * m.B * s.a * n[0] + m.B * s.b * n[1];
    }
  }
  return data;
}

EdgeFluxData classify_edges(const Discretization& disc, const DiscreteField& velocity, double alpha,
                            double delta) {
  return classify_edges(disc, discrete_advection(disc, velocity, alpha), delta);
}

SparseMatrix assemble_transport(const Discretization& disc, const AdvectionField& field,
                                double delta, const EdgeFluxData& edges, TransportForm form,
                                bool include_mass) {
  const ParametricMesh& mesh = disc.mesh();
  const std::size_t ne = mesh.num_elements();
  Triplets t;
  t.reserve(ne * 9 * 4);
  const bool ibp = form == TransportForm::integrated_by_parts;

  for (std::size_t k = 0; k < ne; ++k) {
    Eigen::Matrix3d local = Eigen::Matrix3d::Zero();
    for (const QuadraturePoint& qp : disc.points(k)) {
      const double r = qp.at.r;
      const auto [B, B1, B2] = metric(r, qp.at.theta, delta);
      const double rB = r * B;
      const AdvectionSample s = field(k, qp.bary, qp.at);
      const double div = (B + B2) * s.a + rB * s.a_r - B1 * s.b + B * s.b_theta;
      for (int i = 0; i < 3; ++i) {
        const ScalarJet& tau = qp.p1[i];
        for (int j = 0; j < 3; ++j) {
          const ScalarJet& sg = qp.p1[j];
          double v = include_mass ? rB * sg.v * tau.v : 0.0;
          if (ibp) {
            v += -(rB * s.a * tau.r + B * s.b * tau.t) * sg.v - 0.5 * div * tau.v * sg.v;
          } else {
            v += (rB * s.a * sg.r + B * s.b * sg.t) * tau.v + 0.5 * div * sg.v * tau.v;
          }
          local(i, j) += v * qp.weight;
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        t.emplace_back(static_cast<int>(3 * k + i), static_cast<int>(3 * k + j), local(i, j));
      }
    }
  }

  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    const Edge& edge = mesh.edges()[e];
    const double len = edge_length(mesh, edge);
    for (int side = 0; side < 2; ++side) {
      const int K = edge.elements[side];
      if (K < 0) continue;
      const int N = edge.elements[1 - side];
      for (int q = 0; q < 3; ++q) {
        const double phi = edges.side_flux(e, side, q);
        if (!(phi < 0.0)) continue;
        const double c = phi * edges.rule.weights[q] * len;
        const auto lk = p1_values(edge_point(mesh, edge, side, edges.rule.points[q]));
        if (!ibp) {
          for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) t.emplace_back(3 * K + i, 3 * K + j, -c * lk[i] * lk[j]);
          }
        }
        if (N < 0) continue;
        const auto ln = p1_values(edge_point(mesh, edge, 1 - side, edges.rule.points[q]));
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            if (ibp) {
              t.emplace_back(3 * K + i, 3 * N + j, c * lk[i] * ln[j]);
              t.emplace_back(3 * N + i, 3 * N + j, -c * ln[i] * ln[j]);
            } else {
              t.emplace_back(3 * K + i, 3 * N + j, c * lk[i] * ln[j]);
            }
          }
        }
      }
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(3 * ne);
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::array<Eigen::VectorXd, 3> assemble_sources(const Discretization& disc,
                                                const SolverState& state,
                                                const FlowParams& params) {
  const std::size_t ne = disc.mesh().num_elements();
  std::array<Eigen::VectorXd, 3> rhs;
  for (auto& v : rhs) v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 * ne));
  const double alpha = params.alpha();
  if (alpha == 0.0 && params.reynolds() == 0.0) return rhs;

  const StateEvaluator eval(disc, state);
  const double delta = params.delta();
  for (std::size_t k = 0; k < ne; ++k) {
    for (const QuadraturePoint& qp : disc.points(k)) {
      const VelocitySample smp = eval.sample(k, qp);
      const FrameVector F = force_divergence(smp, params);
      const auto sg = eval.sigma(k, qp.p1);
      const double r = qp.at.r;
      const auto [B, B1, B2] = metric(r, qp.at.theta, delta);
      const double rB3 = std::pow(r * B, 3);
      const double u = smp.velocity[0].v;
      const double v = smp.velocity[1].v;
      const double w = smp.velocity[2].v;
      const double stretch = 2.0 * ((B + B2) * u - B1 * v);
      const std::array<double, 3> G = {
          rB3 * F[0] + alpha * (stretch * sg[0] + B * v * sg[1] + B2 * w * sg[2]),
          rB3 * F[1] + alpha * (stretch * sg[1] - B * v * sg[0] - B1 * w * sg[2]),
          rB3 * F[2] + alpha * (stretch * sg[2] + (B1 * sg[1] - B2 * sg[0]) * w)};
      for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < 3; ++i) {
          rhs[c][static_cast<Eigen::Index>(3 * k + i)] += G[c] * qp.p1[i].v * qp.weight;
        }
      }
    }
  }
  return rhs;
}

Eigen::VectorXd assemble_load(const Discretization& disc,
                              const std::function<double(const Point&)>& g) {
  const std::size_t ne = disc.mesh().num_elements();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(3 * ne));
  for (std::size_t k = 0; k < ne; ++k) {
    for (const QuadraturePoint& qp : disc.points(k)) {
      const double gv = g(qp.at);
      for (int i = 0; i < 3; ++i) rhs[static_cast<Eigen::Index>(3 * k + i)] += gv * qp.p1[i].v * qp.weight;
    }
  }
  return rhs;
}

std::array<DiscreteField, 3> solve_transport(const Discretization& disc, const SparseMatrix& matrix,
                                             const std::array<Eigen::VectorXd, 3>& rhs,
                                             double advection_scale) {
  SparseLuSolver lu;
  try {
    lu.factorize(matrix);
  } catch (const Error& e) {
    throw Error(ErrorCategory::linear_solver,
                std::string("singular transport operator (alpha*|u| = ") +
                    std::to_string(advection_scale) + "): " + e.what());
  }
  std::array<DiscreteField, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = DiscreteField(disc.stress(), lu.solve(rhs[i]));
  return out;
}

}  // namespace curvedpipe
