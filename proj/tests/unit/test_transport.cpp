#include <doctest.h>

#include <cmath>
#include <random>

#include "curvedpipe/cartesian_oracle.hpp"
#include "curvedpipe/state.hpp"
#include "curvedpipe/transport.hpp"
#include "curvedpipe/validation.hpp"

using namespace curvedpipe;

namespace {

AdvectionField constant_field(double a, double b) {
  return [a, b](std::size_t, const Barycentric&, const Point&) { return AdvectionSample{a, 0.0, b, 0.0}; };
}

// (0, r(1 - r)): solenoidal for the weighted divergence at delta = 0.
AdvectionField swirl() {
  return [](std::size_t, const Barycentric&, const Point& x) {
    return AdvectionSample{0.0, 0.0, x.r * (1.0 - x.r), 0.0};
  };
}

Eigen::VectorXd random_vector(Eigen::Index n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = d(rng);
  return x;
}

// Discontinuous P1 coefficients of a continuous function sampled at vertices.
Eigen::VectorXd sample_p1(const Discretization& disc, double (*f)(const Point&)) {
  const DofMap& m = *disc.stress();
  Eigen::VectorXd nodal(static_cast<Eigen::Index>(m.num_nodes()));
  for (std::size_t n = 0; n < m.num_nodes(); ++n) nodal[static_cast<Eigen::Index>(n)] = f(m.node_point(static_cast<int>(n)));
  return m.reduce(nodal);
}

}  // namespace

TEST_CASE("edge classification") {
  const Discretization disc(4, 12);
  const ParametricMesh& mesh = disc.mesh();

  SUBCASE("alpha = 0 has no inflow") {
    const SolverState s = zero_state(disc);
    CHECK(classify_edges(disc, s.velocity, 0.0, 0.2).inflow_count() == 0);
  }

  SUBCASE("unit radial field") {
    const EdgeFluxData d = classify_edges(disc, constant_field(1.0, 0.0), 0.0);
    int checked_interior = 0;
    int checked_axis = 0;
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
      const Edge& edge = mesh.edges()[e];
      const Point& p0 = mesh.vertices()[edge.vertices[0]];
      const Point& p1 = mesh.vertices()[edge.vertices[1]];
      if (p0.r != p1.r) continue;
      for (int s = 0; s < (edge.is_boundary() ? 1 : 2); ++s) {
        if (edge.normals[s][0] > -0.5) continue;
        for (int q = 0; q < 3; ++q) {
          if (edge.tag == EdgeTag::axis) {
            CHECK(d.side_flux(e, s, q) == 0.0);
            CHECK_FALSE(d.inflow(e, s, q));
            ++checked_axis;
          } else if (std::abs(p0.r - 0.5) < 1e-12) {
            CHECK(d.side_flux(e, s, q) == doctest::Approx(-0.5));
            CHECK(d.inflow(e, s, q));
            ++checked_interior;
          }
        }
      }
    }
    CHECK(checked_interior > 0);
    CHECK(checked_axis > 0);
  }

  SUBCASE("negating the field reverses inflow") {
    const auto f = [](std::size_t, const Barycentric&, const Point& x) {
      return AdvectionSample{std::sin(x.theta) * (1 - x.r), 0.0, x.r * std::cos(x.theta), 0.0};
    };
    const auto g = [&f](std::size_t k, const Barycentric& b, const Point& x) {
      AdvectionSample s = f(k, b, x);
      s.a = -s.a;
      s.b = -s.b;
      return s;
    };
    const EdgeFluxData dp = classify_edges(disc, f, 0.2);
    const EdgeFluxData dn = classify_edges(disc, g, 0.2);
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
      for (int s = 0; s < (mesh.edges()[e].is_boundary() ? 1 : 2); ++s) {
        for (int q = 0; q < 3; ++q) {
          if (std::abs(dp.side_flux(e, s, q)) > 1e-14) CHECK(dp.inflow(e, s, q) != dn.inflow(e, s, q));
        }
      }
    }
  }
}

TEST_CASE("alpha = 0 gives the weighted block mass matrix") {
  const Discretization disc(4, 12);
  const AdvectionField none = constant_field(0.0, 0.0);
  const EdgeFluxData edges = classify_edges(disc, none, 0.2);
  const SparseMatrix M = assemble_transport(disc, none, 0.2, edges);
  CHECK((Eigen::MatrixXd(M) - Eigen::MatrixXd(SparseMatrix(M.transpose()))).norm() <= 1e-15);
  for (int j = 0; j < M.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(M, j); it; ++it) CHECK(it.row() / 3 == it.col() / 3);
  }
  const Eigen::VectorXd x = random_vector(M.rows(), 3);
  CHECK(x.dot(M * x) > 0.0);
}

TEST_CASE("upwind form is nonnegative for a solenoidal field") {
  const Discretization disc(6, 16);
  const AdvectionField f = swirl();
  const EdgeFluxData edges = classify_edges(disc, f, 0.0);
  const SparseMatrix Bh = assemble_transport(disc, f, 0.0, edges, TransportForm::original, false);
  for (unsigned seed : {1u, 2u, 3u}) {
    const Eigen::VectorXd x = random_vector(Bh.rows(), seed);
    CHECK(x.dot(Bh * x) >= -1e-12 * x.squaredNorm());
  }
}

TEST_CASE("original and integrated-by-parts forms agree") {
  const Discretization disc(6, 16);
  const AdvectionField f = swirl();
  const EdgeFluxData edges = classify_edges(disc, f, 0.0);
  const SparseMatrix M0 = assemble_transport(disc, f, 0.0, edges, TransportForm::original, false);
  const SparseMatrix M1 = assemble_transport(disc, f, 0.0, edges, TransportForm::integrated_by_parts, false);
  const Eigen::VectorXd sigma =
      sample_p1(disc, [](const Point& p) { return std::cos(p.theta) * p.r + p.r * p.r; });
  for (unsigned seed : {5u, 6u}) {
    const Eigen::VectorXd tau = random_vector(M0.rows(), seed);
    const double a = tau.dot(M0 * sigma);
    const double b = tau.dot(M1 * sigma);
    CHECK(std::abs(a - b) <= 1e-10 * std::max(std::abs(a), 1.0));
  }
}

TEST_CASE("round trip and solve") {
  const Discretization disc(6, 16);
  const AdvectionField f = constant_field(0.3, -0.7);
  const EdgeFluxData edges = classify_edges(disc, f, 0.3);
  const SparseMatrix M = assemble_transport(disc, f, 0.3, edges);
  const Eigen::VectorXd x = random_vector(M.rows(), 9);
  CHECK((solve_sparse(M, M * x) - x).norm() <= 1e-10 * x.norm());

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(M.rows());
  const auto sigma = solve_transport(disc, M, {zero, M * x, zero});
  CHECK(sigma[0].coefficients.norm() == 0.0);
  CHECK((sigma[1].coefficients - x).norm() <= 1e-10 * x.norm());
}

TEST_CASE("radial advection converges") {
  const double e1 = transport_mms(8, 24);
  const double e2 = transport_mms(16, 48);
  const double e3 = transport_mms(32, 96);
  CHECK(observed_rate(e1, e2) >= 1.4);
  CHECK(observed_rate(e2, e3) >= 1.4);
}

TEST_CASE("transport sources") {
  auto disc = std::make_shared<const Discretization>(8, 24);
  SolverState s = zero_state(*disc);

  SUBCASE("zero state") {
    const auto G = assemble_sources(*disc, s, FlowParams(0.2, 3.0, 0.4, 4.0));
    for (const auto& g : G) CHECK(g.norm() == 0.0);
  }

  const DofMap& m = *disc->scalar();
  Eigen::VectorXd nodal(static_cast<Eigen::Index>(m.num_nodes()));
  for (std::size_t n = 0; n < m.num_nodes(); ++n) {
    const double r = m.node_point(static_cast<int>(n)).r;
    nodal[static_cast<Eigen::Index>(n)] = 1.0 - r * r;
  }
  s.w = DiscreteField(disc->scalar(), m.reduce(nodal));

  SUBCASE("creeping Newtonian") {
    const auto G = assemble_sources(*disc, s, FlowParams(0.2, 0.0, 0.0, 4.0));
    for (const auto& g : G) CHECK(g.norm() == 0.0);
  }

  SUBCASE("centrifugal load of an axial profile") {
    const FlowParams prm(0.2, 2.0, 0.0, 4.0);
    const auto G = assemble_sources(*disc, s, prm);
    const AnalyticField field = [](const Jet2& r, const Jet2&) {
      return std::array<Jet2, 4>{Jet2(0.0), Jet2(0.0), 1.0 - r * r, Jet2(0.0)};
    };
    for (int i = 0; i < 3; ++i) {
      const Eigen::VectorXd ref = assemble_load(*disc, [&](const Point& at) {
        if (at.r <= 0.0) return 0.0;
        const double rB = at.r * metric(at.r, at.theta, 0.2).B;
        return rB * rB * rB * force_divergence(sample_from_analytic(field, at), prm)[i];
      });
      CAPTURE(i);
      CHECK((G[static_cast<std::size_t>(i)] - ref).norm() <= 1e-12 * std::max(ref.norm(), 1.0));
    }
    CHECK(G[2].norm() <= 1e-14);
    CHECK(G[0].norm() > 0.0);
  }
}
