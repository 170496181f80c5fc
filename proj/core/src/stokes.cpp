#include "curvedpipe/stokes.hpp"

#include <vector>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix from_triplets(Eigen::Index rows, Eigen::Index cols, const Triplets& t) {
  SparseMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// Pointwise load -> nodal vectors, then restriction to the free unknowns.
StokesRhs assemble_rhs(const Discretization& disc, const FlowParams& params,
                       const std::function<std::array<double, 3>(std::size_t, const QuadraturePoint&)>& load) {
  const DofMap& vel = *disc.velocity();
  const DofMap& sca = *disc.scalar();
  const std::size_t nn = vel.num_nodes();
  Eigen::VectorXd fu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * nn));
  Eigen::VectorXd fw = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sca.num_nodes()));
  const double delta = params.delta();
  for (std::size_t k = 0; k < disc.mesh().num_elements(); ++k) {
    const auto nodes = vel.element_nodes(k);
    for (const QuadraturePoint& qp : disc.points(k)) {
      const auto s = load(k, qp);
      const Metric m = metric(qp.at.r, qp.at.theta, delta);
      const double axial = qp.at.r * qp.at.r * m.B * params.pstar() + s[2];
      for (int a = 0; a < 6; ++a) {
        const double phi = qp.p2[a].v * qp.weight;
        fu[nodes[a]] += s[0] * phi;
        fu[static_cast<Eigen::Index>(nn) + nodes[a]] += s[1] * phi;
        fw[sca.element_node(k, a)] += axial * phi;
      }
    }
  }
  const SparseMatrix pu = vel.expansion();
  const SparseMatrix pw = sca.expansion();
  StokesRhs rhs;
  const Eigen::Index nu = static_cast<Eigen::Index>(vel.num_free());
  const Eigen::Index np = static_cast<Eigen::Index>(disc.pressure()->num_free());
  rhs.secondary = Eigen::VectorXd::Zero(nu + np + 1);
  rhs.secondary.head(nu) = pu.transpose() * fu;
  rhs.axial = pw.transpose() * fw;
  return rhs;
}

}  // namespace

LocalForms local_forms(const Discretization& disc, std::size_t k, double delta,
                       const AssemblyOptions& options) {
  LocalForms f;
  f.a.setZero();
  f.a1_u.setZero();
  f.a1_v.setZero();
  f.a2_u.setZero();
  f.a2_v.setZero();
  f.a3.setZero();
  f.b1.setZero();
  f.b2.setZero();
  f.div_u.setZero();
  f.div_v.setZero();
  for (const QuadraturePoint& qp : disc.points(k)) {
    const double r = qp.at.r;
    const auto [B, B1, B2] = metric(r, qp.at.theta, delta);
    const double rB = r * B;
    const double w = qp.weight;
    const double rd2 = (r * delta) * (r * delta);
    for (int a = 0; a < 6; ++a) {
      const ScalarJet& z = qp.p2[a];
      const double test_r = rB * z.r + (B + B2) * z.v;
      const double test_t = B * z.t - B1 * z.v;
      for (int b = 0; b < 6; ++b) {
        const ScalarJet& u = qp.p2[b];
        const double mass = u.v * z.v * w;
        const double base = (rB * u.r * test_r + B * u.t * test_t) * w;
        f.a(a, b) += base;
        f.a1_u(a, b) += options.a1_mass_scale * (B * B + B2 * B2) * mass;
        f.a1_v(a, b) += -B1 * (B + B2) * mass + 2.0 * B * B * u.t * z.v * w;
        f.a2_u(a, b) += B1 * mass - 2.0 * B * B * u.t * z.v * w;
        f.a2_v(a, b) += (B * B + B1 * B1) * mass;
        f.a3(a, b) += base + rd2 * mass;
      }
      for (int j = 0; j < 3; ++j) {
        const double p = qp.p1[j].v;
        f.b1(a, j) -= rB * p * (rB * z.r + 2.0 * (B + B2) * z.v) * w;
        f.b2(a, j) -= rB * p * (B * z.t - 2.0 * B1 * z.v) * w;
        f.div_u(j, a) += p * ((B + B2) * z.v + rB * z.r) * w;
        f.div_v(j, a) += p * (B * z.t - B1 * z.v) * w;
      }
    }
  }
  f.a1_u += f.a;
  f.a2_v += f.a;
  return f;
}

SaddleSystem assemble_secondary(const Discretization& disc, double delta,
                                const AssemblyOptions& options) {
  const DofMap& vel = *disc.velocity();
  const DofMap& pre = *disc.pressure();
  const int nn = static_cast<int>(vel.num_nodes());
  Triplets ta, tg, td;
  const std::size_t ne = disc.mesh().num_elements();
  ta.reserve(ne * 144);
  tg.reserve(ne * 36);
  td.reserve(ne * 36);
  for (std::size_t k = 0; k < ne; ++k) {
    const LocalForms f = local_forms(disc, k, delta, options);
    const auto vn = vel.element_nodes(k);
    const auto pn = pre.element_nodes(k);
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        ta.emplace_back(vn[a], vn[b], f.a1_u(a, b));
        ta.emplace_back(vn[a], nn + vn[b], f.a1_v(a, b));
        ta.emplace_back(nn + vn[a], vn[b], f.a2_u(a, b));
        ta.emplace_back(nn + vn[a], nn + vn[b], f.a2_v(a, b));
      }
      for (int j = 0; j < 3; ++j) {
        tg.emplace_back(vn[a], pn[j], f.b1(a, j));
        tg.emplace_back(nn + vn[a], pn[j], f.b2(a, j));
        td.emplace_back(pn[j], vn[a], f.div_u(j, a));
        td.emplace_back(pn[j], nn + vn[a], f.div_v(j, a));
      }
    }
  }
  const Eigen::Index nvn = 2 * nn;
  const Eigen::Index npn = static_cast<Eigen::Index>(pre.num_nodes());
  const SparseMatrix pu = vel.expansion();
  const SparseMatrix pp = pre.expansion();
  const SparseMatrix A = pu.transpose() * from_triplets(nvn, nvn, ta) * pu;
  const SparseMatrix G = pu.transpose() * from_triplets(nvn, npn, tg) * pp;
  SparseMatrix D = pp.transpose() * from_triplets(npn, nvn, td) * pu;

  SaddleSystem sys;
  sys.n_velocity = A.rows();
  sys.n_pressure = D.rows();
  const Eigen::Index nu = sys.n_velocity;
  const Eigen::Index np = sys.n_pressure;
  Triplets t;
  t.reserve(static_cast<std::size_t>(A.nonZeros() + G.nonZeros() + D.nonZeros() + 2 * np));
  auto append = [&t](const SparseMatrix& m, Eigen::Index r0, Eigen::Index c0) {
    for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
      for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
        t.emplace_back(static_cast<int>(r0 + it.row()), static_cast<int>(c0 + it.col()), it.value());
      }
    }
  };
  append(A, 0, 0);
  append(G, 0, nu);
  append(D, nu, 0);
  const Eigen::VectorXd& mw = pre.mean_weights();
  for (Eigen::Index j = 0; j < np; ++j) {
    t.emplace_back(static_cast<int>(nu + j), static_cast<int>(nu + np), mw[j]);
    t.emplace_back(static_cast<int>(nu + np), static_cast<int>(nu + j), mw[j]);
  }
  sys.matrix = from_triplets(nu + np + 1, nu + np + 1, t);
  sys.divergence = std::move(D);
  return sys;
}

AxialSystem assemble_axial(const Discretization& disc, double delta) {
  const DofMap& sca = *disc.scalar();
  const Eigen::Index nn = static_cast<Eigen::Index>(sca.num_nodes());
  Triplets t;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(nn);
  for (std::size_t k = 0; k < disc.mesh().num_elements(); ++k) {
    const LocalForms lf = local_forms(disc, k, delta);
    const auto n = sca.element_nodes(k);
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) t.emplace_back(n[a], n[b], lf.a3(a, b));
    }
    for (const QuadraturePoint& qp : disc.points(k)) {
      const Metric m = metric(qp.at.r, qp.at.theta, delta);
      const double g = qp.at.r * qp.at.r * m.B * qp.weight;
      for (int a = 0; a < 6; ++a) f[n[a]] += g * qp.p2[a].v;
    }
  }
  const SparseMatrix pw = sca.expansion();
  AxialSystem sys;
  sys.matrix = pw.transpose() * from_triplets(nn, nn, t) * pw;
  sys.unit_forcing = pw.transpose() * f;
  return sys;
}

StokesRhs stokes_rhs(const Discretization& disc, const std::array<DiscreteField, 3>& sigma,
                     const FlowParams& params) {
  std::array<Eigen::VectorXd, 3> nodal;
  for (int i = 0; i < 3; ++i) {
    if (!sigma[i].map || sigma[i].space() != SpaceKind::p1_discontinuous ||
        sigma[i].map->num_elements() != disc.mesh().num_elements()) {
      throw Error(ErrorCategory::domain, "stokes_rhs: sigma must live on the P1-discontinuous space");
    }
    nodal[i] = sigma[i].nodal();
  }
  const DofMap& st = *disc.stress();
  return assemble_rhs(disc, params, [&](std::size_t k, const QuadraturePoint& qp) {
    std::array<double, 3> s{};
    for (int i = 0; i < 3; ++i) {
      const auto c = gather<3>(st, nodal[i], k);
      s[i] = c[0] * qp.p1[0].v + c[1] * qp.p1[1].v + c[2] * qp.p1[2].v;
    }
    return s;
  });
}

StokesRhs stokes_rhs(const Discretization& disc, const PointLoad& sigma, const FlowParams& params) {
  return assemble_rhs(disc, params,
                      [&](std::size_t, const QuadraturePoint& qp) { return sigma(qp.at); });
}

StokesOperator::StokesOperator(std::shared_ptr<const Discretization> disc, double delta,
                               const AssemblyOptions& options)
    : disc_(std::move(disc)),
      delta_(delta),
      saddle_(assemble_secondary(*disc_, delta, options)),
      axial_(assemble_axial(*disc_, delta)) {
  saddle_solver_.factorize(saddle_.matrix);
  axial_solver_.factorize(axial_.matrix);
}

StokesSolution StokesOperator::solve(const StokesRhs& rhs) const {
  const Eigen::VectorXd x = saddle_solver_.solve(rhs.secondary);
  StokesSolution out;
  out.velocity = DiscreteField(disc_->velocity(), x.head(saddle_.n_velocity));
  out.p = DiscreteField(disc_->pressure(), x.segment(saddle_.n_velocity, saddle_.n_pressure));
  out.multiplier = x[saddle_.size() - 1];
  out.w = DiscreteField(disc_->scalar(), axial_solver_.solve(rhs.axial));
  return out;
}

}  // namespace curvedpipe
