// Acceptance suite for the curved-pipe solver. Prints one PASS/FAIL line per
// criterion and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "curvedpipe/study.hpp"
#include "curvedpipe/validation.hpp"

using namespace curvedpipe;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double peak(const PointResult& p) {
  return std::max(std::abs(p.record.extrema.psi_min), std::abs(p.record.extrema.psi_max));
}

// Signed psi at the largest-magnitude node with 0 < theta < pi.
double upper_peak(const Study& s, const PointResult& p) {
  const DofMap& m = *s.discretization().scalar();
  const Eigen::VectorXd n = p.psi.nodal();
  double best = 0.0;
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    const double t = m.node_point(static_cast<int>(i)).theta;
    const double v = n[static_cast<Eigen::Index>(i)];
    if (t > 1e-9 && t < kPi - 1e-9 && std::abs(v) > std::abs(best)) best = v;
  }
  return best;
}

std::string census(const VortexSummary& v) {
  return "(" + std::to_string(v.positive) + "," + std::to_string(v.negative) + ")";
}

bool census_stable(const Study& s, const PointResult& p) {
  for (double eps : {0.03, 0.05, 0.08}) {
    const VortexSummary v = vortex_census(s.discretization(), p.psi, eps);
    if (v.positive != p.census.positive || v.negative != p.census.negative) return false;
  }
  return true;
}

RunConfig config(double delta, double reynolds = 0.0, double alpha = 0.0) {
  RunConfig c;
  c.delta = delta;
  c.reynolds = reynolds;
  c.alpha = alpha;
  return c;
}

struct Ledger {
  int states = 0;
  double worst_equivalence = 0.0;
  double worst_divergence = 0.0;
  int unstable_census = 0;
  std::string unstable;

  void add(const Study& s, const PointResult& p) {
    if (!p.converged) return;
    worst_equivalence = std::max(worst_equivalence, p.equivalence);
    worst_divergence = std::max(worst_divergence, p.divergence);
    if (!census_stable(s, p)) {
      ++unstable_census;
      unstable += fmt("Re=%g", p.params.reynolds()) + fmt(" alpha=%g:", p.params.alpha());
      for (double eps : {0.03, 0.05, 0.08}) unstable += census(vortex_census(s.discretization(), p.psi, eps));
      unstable += " ";
    }
    ++states;
  }
};

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

}  // namespace

int main() {
  Ledger ledger;
  std::vector<PointResult> keep;
  keep.reserve(64);

  // 1. Straight-pipe limit.
  {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (double delta : {0.0, 0.001}) {
      Study s(config(delta));
      keep.push_back(s.solve(FlowParams(delta, 0.0, 0.0, 4.0)));
      const PointResult& p = keep.back();
      ledger.add(s, p);
      const DofMap& m = *s.discretization().scalar();
      const Eigen::VectorXd w = p.state.w.nodal();
      double err = 0.0;
      for (std::size_t i = 0; i < m.num_nodes(); ++i) {
        const double r = m.node_point(static_cast<int>(i)).r;
        err = std::max(err, std::abs(w[static_cast<Eigen::Index>(i)] - (1.0 - r * r)));
      }
      ok = ok && p.converged && err <= 1e-3 && peak(p) <= 1e-8;
      detail += "delta=" + fmt("%g", delta) + " w_err=" + fmt("%.2e", err) + " |psi|=" + fmt("%.1e", peak(p)) + "; ";
    }
    const double t = seconds_since(t0);
    report(1, ok && t < 10.0, detail + fmt("%.1fs", t));
  }

  // 2. Axial maximum moves to the inner wall.
  {
    const auto t0 = Clock::now();
    Study s(config(0.2));
    keep.push_back(s.solve(FlowParams(0.2, 0.0, 0.0, 4.0)));
    const PointResult& p = keep.back();
    ledger.add(s, p);
    const Point at = p.record.extrema.at_w_max;
    const double t = seconds_since(t0);
    report(2, p.converged && at.r > 1e-9 && std::cos(at.theta) < 0.0 && t < 10.0,
           "argmax w at r=" + fmt("%.3f", at.r) + " theta=" + fmt("%.3f", at.theta) + "; " + fmt("%.1fs", t));
  }

  // 3. Newtonian vortex pair.
  {
    const auto t0 = Clock::now();
    Study s(config(0.2));
    keep.push_back(s.solve(FlowParams(0.2, 5.0, 0.0, 4.0)));
    const PointResult& p = keep.back();
    ledger.add(s, p);
    const double up = upper_peak(s, p);
    const ExtremaRecord& e = p.record.extrema;
    const double asym = std::abs(e.psi_max + e.psi_min);
    const double t = seconds_since(t0);
    const bool ok = p.converged && p.census.positive == 1 && p.census.negative == 1 && up > 0.0 &&
                    asym <= 1e-6 * std::abs(e.psi_max) && t < 60.0;
    report(3, ok, "census " + census(p.census) + " upper psi=" + fmt("%.3e", up) + " asymmetry=" +
                      fmt("%.1e", asym) + "; " + fmt("%.1fs", t));
  }

  // 4. Newtonian extrema grow with Reynolds number.
  {
    const auto t0 = Clock::now();
    Study s(config(0.2));
    std::vector<PointResult> pts = run_sweep(s, {SweepParameter::reynolds, {1, 2, 3, 4, 5}});
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ok = ok && pts[i].converged && (i == 0 || peak(pts[i]) > peak(pts[i - 1]));
      detail += fmt("%.3e ", peak(pts[i]));
    }
    for (auto& p : pts) keep.push_back(std::move(p));
    for (std::size_t i = keep.size() - 5; i < keep.size(); ++i) ledger.add(s, keep[i]);
    const double t = seconds_since(t0);
    report(4, ok && t < 300.0, "|psi| " + detail + fmt("%.1fs", t));
  }

  // 5. Creeping viscoelastic flow.
  {
    const auto t0 = Clock::now();
    Study s(config(0.2));
    std::vector<PointResult> pts = run_sweep(s, {SweepParameter::alpha, {0.05, 0.1, 0.15, 0.2}});
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ok = ok && pts[i].converged && (i == 0 || peak(pts[i]) > peak(pts[i - 1]));
      detail += fmt("%.3e ", peak(pts[i]));
    }
    const double plus = upper_peak(s, pts.back());
    for (auto& p : pts) keep.push_back(std::move(p));
    for (std::size_t i = keep.size() - 4; i < keep.size(); ++i) ledger.add(s, keep[i]);
    keep.push_back(s.solve(FlowParams(0.2, 0.0, -0.2, 4.0), false));
    ledger.add(s, keep.back());
    const double minus = upper_peak(s, keep.back());
    ok = ok && keep.back().converged && plus * minus < 0.0;
    const double t = seconds_since(t0);
    report(5, ok && t < 300.0,
           "|psi| " + detail + "upper psi(+0.2)=" + fmt("%.2e", plus) + " (-0.2)=" + fmt("%.2e", minus) + "; " +
               fmt("%.1fs", t));
  }

  // 6. Reversal regime at Re = 5.
  {
    const auto t0 = Clock::now();
    Study s(config(0.2, 5.0));
    keep.push_back(s.solve(FlowParams(0.2, 5.0, 0.0, 4.0)));
    ledger.add(s, keep.back());
    std::vector<double> alphas;
    for (int i = 1; i <= 10; ++i) alphas.push_back(-0.05 * i);
    std::vector<PointResult> pts = run_sweep(s, {SweepParameter::alpha, alphas});
    double best = INFINITY;
    double at = 0.0;
    bool rises = false;
    bool multi = false;
    int unconverged = 0;
    std::string detail;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const PointResult& p = pts[i];
      if (!p.converged) {
        ++unconverged;
        detail += fmt("%g:-- ", alphas[i]);
        continue;
      }
      detail += fmt("%g:", alphas[i]) + fmt("%.2e", peak(p)) + census(p.census) + " ";
      if (peak(p) < best) {
        best = peak(p);
        at = alphas[i];
      } else {
        rises = true;
      }
      const double a = alphas[i];
      if (a >= -0.35 - 1e-9 && a <= -0.2 + 1e-9 && p.census.positive + p.census.negative > 2) multi = true;
    }
    for (auto& p : pts) keep.push_back(std::move(p));
    for (std::size_t i = keep.size() - alphas.size(); i < keep.size(); ++i) ledger.add(s, keep[i]);
    const bool min_ok = rises && at >= -0.3 - 1e-9 && at <= -0.2 + 1e-9;
    const double t = seconds_since(t0);
    report(6, min_ok && multi && unconverged == 0 && t < 900.0,
           std::string("(a) min at alpha=") + fmt("%g", at) + (min_ok ? " ok" : " outside [-0.3,-0.2]") +
               "; (b) " + (multi ? "multi-vortex ok" : "no multi-vortex") + "; unconverged=" +
               std::to_string(unconverged) + "; " + detail + fmt("%.1fs", t));
  }

  // 7. Inertia overtakes viscoelasticity.
  {
    const auto t0 = Clock::now();
    Study s(config(0.2, 0.0, -0.1));
    keep.push_back(s.solve(FlowParams(0.2, 0.0, -0.1, 4.0)));
    ledger.add(s, keep.back());
    const std::vector<double> res = {0.5, 1, 1.4, 2, 5, 10};
    std::vector<PointResult> pts = run_sweep(s, {SweepParameter::reynolds, res});
    std::string detail;
    bool all = true;
    bool middle = false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      all = all && pts[i].converged;
      detail += fmt("%g:", res[i]) + census(pts[i].census) + fmt("%+.1e ", upper_peak(s, pts[i]));
      if (res[i] >= 1.4 && res[i] <= 2.5 && pts[i].census.positive + pts[i].census.negative > 2) middle = true;
    }
    const double low = upper_peak(s, pts.front());
    const double high = upper_peak(s, pts.back());
    const bool newtonian = pts.back().census.positive == 1 && pts.back().census.negative == 1 && high > 0.0;
    for (auto& p : pts) keep.push_back(std::move(p));
    for (std::size_t i = keep.size() - res.size(); i < keep.size(); ++i) ledger.add(s, keep[i]);
    const double t = seconds_since(t0);
    report(7, all && low * high < 0.0 && newtonian && middle && t < 900.0,
           std::string(low * high < 0.0 ? "orientation flips" : "no orientation flip") + "; " +
               (middle ? "intermediate multi-vortex" : "no intermediate multi-vortex") + "; " + detail +
               fmt("%.1fs", t));
  }

  // 8. Decoupled system reproduces the full equations.
  report(8, ledger.worst_equivalence <= 1e-6,
         std::to_string(ledger.states) + " converged states, worst equivalence " +
             fmt("%.2e", ledger.worst_equivalence));

  // Vortex counts must not depend on the census threshold.
  const bool stable = ledger.unstable_census == 0;
  std::printf("%s census stability: %d of %d states change under eps in {0.03,0.05,0.08} %s\n",
              stable ? "PASS" : "FAIL", ledger.unstable_census, ledger.states, ledger.unstable.c_str());
  if (!stable) ++failures;

  // 9. Numerical gates.
  {
    const auto t0 = Clock::now();
    const StokesMmsErrors e1 = stokes_mms(8, 24, 0.2);
    const StokesMmsErrors e2 = stokes_mms(16, 48, 0.2);
    const StokesMmsErrors e3 = stokes_mms(32, 96, 0.2);
    const double ru = std::min(observed_rate(e1.velocity, e2.velocity), observed_rate(e2.velocity, e3.velocity));
    const double rw = std::min(observed_rate(e1.axial, e2.axial), observed_rate(e2.axial, e3.axial));
    const double rp = std::min(observed_rate(e1.pressure, e2.pressure), observed_rate(e2.pressure, e3.pressure));
    const double t1 = transport_mms(8, 24);
    const double t2 = transport_mms(16, 48);
    const double t3 = transport_mms(32, 96);
    const double rt = std::min(observed_rate(t1, t2), observed_rate(t2, t3));
    const double oracle = randomized_oracle_residual(50, 2024);
    const double div = std::max({e1.divergence, e2.divergence, e3.divergence, ledger.worst_divergence});
    const double t = seconds_since(t0);
    const bool ok = ru >= 2.7 && rw >= 2.7 && rp >= 1.7 && rt >= 1.4 && oracle <= 1e-6 && div <= 1e-10 && t < 600.0;
    report(9, ok,
           "rates velocity " + fmt("%.2f", ru) + " axial " + fmt("%.2f", rw) + " pressure " + fmt("%.2f", rp) +
               " transport " + fmt("%.2f", rt) + "; oracle " + fmt("%.1e", oracle) + "; divergence " +
               fmt("%.1e", div) + "; " + fmt("%.1fs", t));
  }

  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
