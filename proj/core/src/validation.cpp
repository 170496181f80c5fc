#include "curvedpipe/validation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <memory>
#include <limits>
#include <random>

#include "curvedpipe/cartesian_oracle.hpp"
#include "curvedpipe/curvilinear.hpp"
#include "curvedpipe/error.hpp"
#include "curvedpipe/postprocess.hpp"
#include "curvedpipe/quadrature.hpp"
#include "curvedpipe/solver.hpp"
#include "curvedpipe/transport.hpp"

namespace curvedpipe {

namespace {

// (u, v, w, p) of the manufactured Stokes field. u = -psi_theta / (rB) and
// v = psi_r / B keep (rB u)_r + (B v)_theta = 0.
std::array<Jet2, 4> mms_field(const Jet2& r, const Jet2& t, double delta) {
  const Jet2 c = cos(t);
  const Jet2 s = sin(t);
  const Jet2 B = 1.0 + delta * r * c;
  const Jet2 q = 1.0 - r * r;
  const Jet2 u = -(q * q * c) / B;
  const Jet2 v = q * (1.0 - 5.0 * r * r) * s / B;
  const Jet2 w = q * (1.0 + 0.5 * r * c);
  return {u, v, w, r * c};
}

double psi_exact(const Point& at) {
  const double q = 1.0 - at.r * at.r;
  return q * q * at.r * std::sin(at.theta);
}

// Nodal interpolant of (u, v) on the velocity map, reduced to free unknowns.
DiscreteField interpolate_velocity(const Discretization& disc, const AnalyticField& field) {
  const DofMap& map = *disc.velocity();
  const std::size_t nn = map.num_nodes();
  Eigen::VectorXd nodal(static_cast<Eigen::Index>(2 * nn));
  for (std::size_t n = 0; n < nn; ++n) {
    const Point& x = map.node_point(static_cast<int>(n));
    const auto f = field(Jet2(x.r), Jet2(x.theta));
    nodal[static_cast<Eigen::Index>(n)] = f[0].v;
    nodal[static_cast<Eigen::Index>(nn + n)] = f[1].v;
  }
  return DiscreteField(disc.velocity(), map.reduce(nodal));
}

template <std::size_t N, std::size_t M>
double evaluate(const std::array<double, N>& c, const std::array<ScalarJet, M>& basis) {
  static_assert(N == M);
  double out = 0.0;
  for (std::size_t i = 0; i < N; ++i) out += c[i] * basis[i].v;
  return out;
}

CheckResult at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

CheckResult at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, std::move(detail)};
}

double metric_identity_error() {
  double worst = 0.0;
  const double h = 1e-5;
  for (double delta : {0.0, 0.2, 0.7}) {
    for (double r : {0.1, 0.5, 0.9}) {
      for (double t : {0.0, 1.0, 2.5, 4.0}) {
        const Metric m = metric(r, t, delta);
        const double rb_r = ((r + h) * metric(r + h, t, delta).B - (r - h) * metric(r - h, t, delta).B) / (2 * h);
        const double b_t = (metric(r, t + h, delta).B - metric(r, t - h, delta).B) / (2 * h);
        worst = std::max({worst, std::abs(rb_r - (m.B + m.B2)), std::abs(b_t + m.B1),
                          std::abs(m.B1 * m.B1 + m.B2 * m.B2 - r * r * delta * delta),
                          std::abs(m.B - 1.0 - m.B2)});
      }
    }
  }
  return worst;
}

double quadrature_exactness_error() {
  double worst = 0.0;
  for (int degree : {2, 4, 6, 8}) {
    const QuadratureRule rule = reference_quadrature(degree);
    for (int a = 0; a <= degree; ++a) {
      for (int b = 0; a + b <= degree; ++b) {
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const double x = rule.barycentric[q][1];
          const double y = rule.barycentric[q][2];
          sum += rule.weights[q] * std::pow(x, a) * std::pow(y, b);
        }
        const double exact = std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
        worst = std::max(worst, std::abs(sum - exact));
      }
    }
  }
  return worst;
}

double poiseuille_error() {
  auto disc = std::make_shared<const Discretization>(16, 48);
  StokesOperator stokes(disc, 0.0);
  const FixedPointResult fp = fixed_point(stokes, FlowParams(0.0, 0.0, 0.0, 4.0), nullptr);
  const Eigen::VectorXd w = fp.state.w.nodal();
  double worst = 0.0;
  for (std::size_t n = 0; n < disc->scalar()->num_nodes(); ++n) {
    const double r = disc->scalar()->node_point(static_cast<int>(n)).r;
    worst = std::max(worst, std::abs(w[static_cast<Eigen::Index>(n)] - (1.0 - r * r)));
  }
  return worst;
}

double transport_round_trip_error() {
  const Discretization disc(6, 16);
  const AdvectionField field = [](std::size_t, const Barycentric&, const Point& x) {
    const double s = std::sin(x.theta);
    const double c = std::cos(x.theta);
    return AdvectionSample{0.7 * x.r * (1.0 - x.r) * s, 0.7 * (1.0 - 2.0 * x.r) * s,
                           -0.4 * (1.0 - x.r * x.r) * c, 0.4 * (1.0 - x.r * x.r) * s};
  };
  const double delta = 0.3;
  const EdgeFluxData edges = classify_edges(disc, field, delta);
  const SparseMatrix M = assemble_transport(disc, field, delta, edges);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd x(M.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
  const Eigen::VectorXd back = solve_sparse(M, M * x);
  return (back - x).norm() / x.norm();
}

double newtonian_asymmetry() {
  auto disc = std::make_shared<const Discretization>(16, 48);
  StokesOperator stokes(disc, 0.2);
  const ContinuationResult c =
      continuation_solve(stokes, FlowParams(0.2, 5.0, 0.0, 4.0), ContinuationSchedule{}, {});
  if (!c.converged) return std::numeric_limits<double>::infinity();
  const ExtremaRecord& e = c.steps.back().extrema;
  return std::abs(e.psi_max + e.psi_min) / std::max(std::abs(e.psi_max), std::abs(e.psi_min));
}

std::string rate_detail(const std::vector<double>& errors) {
  std::string out = "errors";
  char buf[32];
  for (double e : errors) {
    std::snprintf(buf, sizeof buf, " %.3e", e);
    out += buf;
  }
  return out;
}

double worst_rate(const std::vector<double>& errors) {
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < errors.size(); ++i) r = std::min(r, observed_rate(errors[i - 1], errors[i]));
  return r;
}

constexpr std::array<std::array<int, 2>, 3> kMeshes = {{{8, 24}, {16, 48}, {32, 96}}};

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

void ValidationReport::print(std::ostream& out) const {
  char line[256];
  for (const CheckResult& c : checks) {
    std::snprintf(line, sizeof line, "%s  %-34s %12.4e  (limit %.3e)", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.threshold);
    out << line;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
}

ValidationLevel parse_validation_level(std::string_view text) {
  if (text == "fast") return ValidationLevel::fast;
  if (text == "full") return ValidationLevel::full;
  throw Error(ErrorCategory::config, "level must be fast or full (got " + std::string(text) + ")");
}

StokesMmsErrors stokes_mms(int nr, int ntheta, double delta, const AssemblyOptions& options) {
  auto disc = std::make_shared<const Discretization>(nr, ntheta);
  const StokesOperator stokes(disc, delta, options);
  const FlowParams params(delta, 0.0, 0.0, 1.0);
  const AnalyticField field = [delta](const Jet2& r, const Jet2& t) { return mms_field(r, t, delta); };

  const PointLoad load = [&](const Point& at) {
    const FrameVector s = stokes_operator(sample_from_analytic(field, at), delta);
    const Metric m = metric(at.r, at.theta, delta);
    const double w2 = at.r * at.r * m.B * m.B;
    return std::array<double, 3>{w2 * s[0], w2 * s[1], w2 * s[2] - at.r * at.r * m.B * params.pstar()};
  };
  const StokesSolution sol = stokes.solve(stokes_rhs(*disc, load, params));

  const Eigen::VectorXd uv = sol.velocity.nodal();
  const Eigen::VectorXd w = sol.w.nodal();
  const Eigen::VectorXd p = sol.p.nodal();
  double eu = 0.0;
  double ew = 0.0;
  double ep = 0.0;
  for (std::size_t k = 0; k < disc->mesh().num_elements(); ++k) {
    const auto cu = gather<6>(*disc->velocity(), uv, k, 0);
    const auto cv = gather<6>(*disc->velocity(), uv, k, 1);
    const auto cw = gather<6>(*disc->scalar(), w, k);
    const auto cp = gather<3>(*disc->pressure(), p, k);
    for (const QuadraturePoint& qp : disc->points(k)) {
      const auto f = field(Jet2(qp.at.r), Jet2(qp.at.theta));
      const double du = evaluate(cu, qp.p2) - f[0].v;
      const double dv = evaluate(cv, qp.p2) - f[1].v;
      const double dw = evaluate(cw, qp.p2) - f[2].v;
      const double dp = evaluate(cp, qp.p1) - f[3].v;
      eu += (du * du + dv * dv) * qp.weight;
      ew += dw * dw * qp.weight;
      ep += dp * dp * qp.weight;
    }
  }
  SolverState state = zero_state(*disc);
  state.velocity = sol.velocity;
  return {std::sqrt(eu), std::sqrt(ew), std::sqrt(ep), divergence_residual(stokes, state)};
}

double transport_mms(int nr, int ntheta) {
  const Discretization disc(nr, ntheta);
  const AdvectionField field = [](std::size_t, const Barycentric&, const Point& x) {
    return AdvectionSample{x.r * (1.0 - x.r), 1.0 - 2.0 * x.r, 0.0, 0.0};
  };
  auto exact = [](double r) { return std::cos(2.0 * r) + r * r; };
  auto load = [&](const Point& x) {
    const double r = x.r;
    const double U = r * (1.0 - r);
    const double dsigma = -2.0 * std::sin(2.0 * r) + 2.0 * r;
    const double div = 2.0 * r - 3.0 * r * r;  // (r U)_r
    return r * exact(r) + r * U * dsigma + 0.5 * div * exact(r);
  };
  const EdgeFluxData edges = classify_edges(disc, field, 0.0);
  const SparseMatrix M = assemble_transport(disc, field, 0.0, edges);
  const DiscreteField sigma(disc.stress(), solve_sparse(M, assemble_load(disc, load)));
  const Eigen::VectorXd nodal = sigma.nodal();
  double err = 0.0;
  for (std::size_t k = 0; k < disc.mesh().num_elements(); ++k) {
    const auto c = gather<3>(*disc.stress(), nodal, k);
    for (const QuadraturePoint& qp : disc.points(k)) {
      const double d = evaluate(c, qp.p1) - exact(qp.at.r);
      err += d * d * qp.weight;
    }
  }
  return std::sqrt(err);
}

double stream_function_mms(int nr, int ntheta, double delta) {
  auto disc = std::make_shared<const Discretization>(nr, ntheta);
  const AnalyticField field = [delta](const Jet2& r, const Jet2& t) { return mms_field(r, t, delta); };
  const StreamFunctionRecovery recovery(disc, delta);
  const DiscreteField psi = recovery.recover(interpolate_velocity(*disc, field));
  const Eigen::VectorXd nodal = psi.nodal();
  double err = 0.0;
  for (std::size_t k = 0; k < disc->mesh().num_elements(); ++k) {
    const auto c = gather<6>(*disc->scalar(), nodal, k);
    for (const QuadraturePoint& qp : disc->points(k)) {
      const double d = evaluate(c, qp.p2) + psi_exact(qp.at);
      err += d * d * qp.weight;
    }
  }
  return std::sqrt(err);
}

double randomized_oracle_residual(int fields, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> radius(0.2, 0.9);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double worst = 0.0;
  for (int f = 0; f < fields; ++f) {
    // c[component][power of r][harmonic][cos/sin]
    double c[4][3][3][2];
    for (auto& comp : c)
      for (auto& pw : comp)
        for (auto& h : pw)
          for (double& x : h) x = 0.5 * coef(rng);
    const AnalyticField field = [&c](const Jet2& r, const Jet2& t) {
      std::array<Jet2, 4> out;
      for (int comp = 0; comp < 4; ++comp) {
        Jet2 sum(0.0);
        Jet2 rp(1.0);
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            const Jet2 jt = static_cast<double>(j) * t;
            sum = sum + rp * (c[comp][i][j][0] * cos(jt) + c[comp][i][j][1] * sin(jt));
          }
          rp = rp * r;
        }
        out[static_cast<std::size_t>(comp)] = sum;
      }
      return out;
    };
    const double delta = std::array<double, 3>{0.0, 0.2, 0.5}[static_cast<std::size_t>(f % 3)];
    const FlowParams params(delta, 5.0 * (0.5 + 0.5 * coef(rng)), 0.5 * coef(rng), 4.0);
    for (int s = 0; s < 3; ++s) {
      worst = std::max(worst, cartesian_residual(field, {radius(rng), angle(rng)}, params));
    }
  }
  return worst;
}

double observed_rate(double coarse_error, double fine_error) {
  return std::log2(coarse_error / fine_error);
}

ValidationReport run_validation(ValidationLevel level) {
  ValidationReport rep;
  auto& out = rep.checks;
  out.push_back(at_most("metric identities", metric_identity_error(), 1e-8));
  out.push_back(at_most("quadrature exactness", quadrature_exactness_error(), 1e-13));
  out.push_back(at_most("cartesian oracle", randomized_oracle_residual(12, 2024), 1e-6,
                        "12 random fields x 3 points"));
  out.push_back(at_most("poiseuille w error", poiseuille_error(), 1e-3, "mesh 16x48"));
  out.push_back(at_most("transport round trip", transport_round_trip_error(), 1e-10));
  if (level == ValidationLevel::fast) return rep;

  std::vector<double> ev;
  std::vector<double> ep;
  std::vector<double> et;
  std::vector<double> es;
  std::vector<double> ef;
  double div = 0.0;
  for (const auto& [nr, nt] : kMeshes) {
    const StokesMmsErrors e = stokes_mms(nr, nt, 0.2);
    ev.push_back(e.velocity);
    ep.push_back(e.pressure);
    div = std::max(div, e.divergence);
    et.push_back(transport_mms(nr, nt));
    es.push_back(stream_function_mms(nr, nt, 0.2));
    ef.push_back(stokes_mms(nr, nt, 0.2, AssemblyOptions{1.0 + 1e-3}).velocity);
  }
  out.push_back(at_least("stokes mms velocity rate", worst_rate(ev), 2.7, rate_detail(ev)));
  out.push_back(at_least("stokes mms pressure rate", worst_rate(ep), 1.7, rate_detail(ep)));
  out.push_back(at_most("stokes mms divergence", div, 1e-10));
  out.push_back(at_least("transport mms rate", worst_rate(et), 1.4, rate_detail(et)));
  out.push_back(at_least("stream function mms rate", worst_rate(es), 1.7, rate_detail(es)));
  // The perturbed run must fail the rate gate and sit clearly above the
  // unperturbed error on the finest mesh.
  const double fault_rate = worst_rate(ef);
  const bool detected = fault_rate < 2.7 && ef.back() > 2.0 * ev.back();
  out.push_back({"perturbed form detected", detected, fault_rate, 2.7,
                 "a1 mass coefficient x (1 + 1e-3); " + rate_detail(ef)});
  out.push_back(at_most("newtonian symmetry", newtonian_asymmetry(), 1e-6, "Re=5 delta=0.2"));
  return rep;
}

}  // namespace curvedpipe
