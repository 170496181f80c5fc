#include "curvedpipe/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <sstream>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

Point wrapped(const Point& p) {
  double t = std::fmod(p.theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return {p.r, t};
}

}  // namespace

StreamFunctionRecovery::StreamFunctionRecovery(std::shared_ptr<const Discretization> disc,
                                               double delta)
    : disc_(std::move(disc)), delta_(delta) {
  const DofMap& sca = *disc_->scalar();
  const Eigen::Index nn = static_cast<Eigen::Index>(sca.num_nodes());
  std::vector<Eigen::Triplet<double>> t;
  for (std::size_t k = 0; k < disc_->mesh().num_elements(); ++k) {
    const auto n = sca.element_nodes(k);
    Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
    for (const QuadraturePoint& qp : disc_->points(k)) {
      for (int a = 0; a < 6; ++a) {
        for (int b = 0; b < 6; ++b) {
          local(a, b) += (qp.p2[a].r * qp.p2[b].r + qp.p2[a].t * qp.p2[b].t) * qp.weight;
        }
      }
    }
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) t.emplace_back(n[a], n[b], local(a, b));
    }
  }
  SparseMatrix k(nn, nn);
  k.setFromTriplets(t.begin(), t.end());
  expansion_ = sca.expansion();
  solver_.factorize(SparseMatrix(expansion_.transpose() * k * expansion_));
}

DiscreteField StreamFunctionRecovery::recover(const DiscreteField& velocity) const {
  const DofMap& sca = *disc_->scalar();
  const DofMap& vel = *disc_->velocity();
  const Eigen::VectorXd uv = velocity.nodal();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(sca.num_nodes()));
  for (std::size_t k = 0; k < disc_->mesh().num_elements(); ++k) {
    const auto u = gather<6>(vel, uv, k, 0);
    const auto v = gather<6>(vel, uv, k, 1);
    const auto n = sca.element_nodes(k);
    for (const QuadraturePoint& qp : disc_->points(k)) {
      const double r = qp.at.r;
      const Metric m = metric(r, qp.at.theta, delta_);
      const double uq = combine(qp.p2, u).v;
      const double vq = combine(qp.p2, v).v;
      for (int a = 0; a < 6; ++a) {
        f[n[a]] += (-m.B * vq * qp.p2[a].r + r * m.B * uq * qp.p2[a].t) * qp.weight;
      }
    }
  }
  return DiscreteField(disc_->scalar(), solver_.solve(expansion_.transpose() * f));
}

DiscreteField recover_stream_function(const std::shared_ptr<const Discretization>& disc,
                                      const SolverState& state, double delta) {
  return StreamFunctionRecovery(disc, delta).recover(state.velocity);
}

ExtremaRecord extrema(const DiscreteField& psi, const DiscreteField& w) {
  ExtremaRecord rec;
  const Eigen::VectorXd ps = psi.nodal();
  const Eigen::VectorXd ws = w.nodal();
  for (Eigen::Index i = 0; i < ps.size(); ++i) {
    const Point& at = psi.map->node_point(static_cast<int>(i));
    if (ps[i] < rec.psi_min) {
      rec.psi_min = ps[i];
      rec.at_min = at;
    }
    if (ps[i] > rec.psi_max) {
      rec.psi_max = ps[i];
      rec.at_max = at;
    }
  }
  rec.w_max = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ws.size(); ++i) {
    if (ws[i] > rec.w_max) {
      rec.w_max = ws[i];
      rec.at_w_max = w.map->node_point(static_cast<int>(i));
    }
  }
  return rec;
}

VortexSummary vortex_census(const Discretization& disc, const DiscreteField& psi, double epsilon) {
  require(epsilon > 0.0 && epsilon < 0.5, "vortex_census: epsilon must lie in (0, 0.5)");
  const ParametricMesh& mesh = disc.mesh();
  const std::size_t ne = mesh.num_elements();
  const Eigen::VectorXd ps = psi.nodal();
  const double scale = ps.lpNorm<Eigen::Infinity>();
  VortexSummary out;
  if (scale == 0.0) return out;

  std::vector<double> mean(ne);
  for (std::size_t k = 0; k < ne; ++k) {
    const auto c = gather<6>(*psi.map, ps, k);
    double s = 0.0;
    for (double x : c) s += x;
    mean[k] = s / 6.0;
  }
  std::vector<std::vector<std::size_t>> touching(mesh.num_vertices());
  for (std::size_t k = 0; k < ne; ++k) {
    for (int v : mesh.triangles()[k]) touching[static_cast<std::size_t>(v)].push_back(k);
  }

  const double threshold = epsilon * scale;
  std::vector<int> label(ne, -1);
  for (std::size_t seed = 0; seed < ne; ++seed) {
    if (label[seed] >= 0 || std::abs(mean[seed]) <= threshold) continue;
    const int sign = mean[seed] > 0.0 ? 1 : -1;
    VortexComponent comp;
    comp.sign = sign;
    std::size_t peak_element = seed;
    std::deque<std::size_t> queue{seed};
    label[seed] = static_cast<int>(out.components.size());
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      ++comp.elements;
      if (std::abs(mean[k]) > std::abs(mean[peak_element])) peak_element = k;
      for (int v : mesh.triangles()[k]) {
        for (std::size_t n : touching[static_cast<std::size_t>(v)]) {
          if (label[n] >= 0 || sign * mean[n] <= threshold) continue;
          label[n] = label[seed];
          queue.push_back(n);
        }
      }
    }
    comp.peak = mean[peak_element];
    const auto& p = mesh.element_points(peak_element);
    comp.at = wrapped({(p[0].r + p[1].r + p[2].r) / 3.0, (p[0].theta + p[1].theta + p[2].theta) / 3.0});
    (sign > 0 ? out.positive : out.negative) += 1;
    out.components.push_back(comp);
  }
  return out;
}

void export_vtk(const Discretization& disc, const SolverState& state, const DiscreteField& psi,
                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCategory::io, "cannot open " + path + " for writing");
  const ParametricMesh& mesh = disc.mesh();
  const std::size_t nv = mesh.num_vertices();
  const std::size_t ne = mesh.num_elements();
  out << "# vtk DataFile Version 2.0\n"
      << "curved pipe cross-section\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n"
      << "POINTS " << nv << " double\n";
  for (const Point& p : mesh.vertices()) {
    out << fmt(p.r * std::cos(p.theta)) << ' ' << fmt(p.r * std::sin(p.theta)) << ' '
        << fmt(0.0) << '\n';
  }
  out << "CELLS " << ne << ' ' << 4 * ne << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << ne << '\n';
  for (std::size_t k = 0; k < ne; ++k) out << "5\n";

  auto scalars = [&out](const char* name, const Eigen::VectorXd& values, Eigen::Index offset,
                        std::size_t count) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < count; ++i) {
      out << fmt(values[offset + static_cast<Eigen::Index>(i)]) << '\n';
    }
  };
  const Eigen::VectorXd uv = state.velocity.nodal();
  const Eigen::Index nn = static_cast<Eigen::Index>(state.velocity.map->num_nodes());
  out << "POINT_DATA " << nv << '\n';
  scalars("u", uv, 0, nv);
  scalars("v", uv, nn, nv);
  scalars("w", state.w.nodal(), 0, nv);
  scalars("p", state.p.nodal(), 0, nv);
  scalars("psi", psi.nodal(), 0, nv);

  out << "CELL_DATA " << ne << '\n';
  const char* names[3] = {"sigma1", "sigma2", "sigma3"};
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd s = state.sigma[i].nodal();
    Eigen::VectorXd means(static_cast<Eigen::Index>(ne));
    for (std::size_t k = 0; k < ne; ++k) {
      const auto c = gather<3>(*state.sigma[i].map, s, k);
      means[static_cast<Eigen::Index>(k)] = (c[0] + c[1] + c[2]) / 3.0;
    }
    scalars(names[i], means, 0, ne);
  }
  if (!out) throw Error(ErrorCategory::io, "write failed: " + path);
}

VtkContents read_vtk(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io, "cannot open " + path);
  VtkContents vtk;
  std::string line;
  std::map<std::string, std::vector<double>>* section = nullptr;
  std::size_t section_size = 0;
  auto fail = [&path](const std::string& what) {
    return Error(ErrorCategory::io, path + ": " + what);
  };
  for (int i = 0; i < 4 && std::getline(in, line); ++i) {
    if (i == 0 && line.rfind("# vtk DataFile Version", 0) != 0) throw fail("not a legacy VTK file");
    if (i == 2 && line != "ASCII") throw fail("only ASCII files are supported");
  }
  std::string key;
  while (in >> key) {
    if (key == "POINTS") {
      std::string type;
      in >> vtk.points >> type;
      double x;
      for (std::size_t i = 0; i < 3 * vtk.points; ++i) in >> x;
    } else if (key == "CELLS") {
      std::size_t total;
      in >> vtk.cells >> total;
      int x;
      for (std::size_t i = 0; i < total; ++i) in >> x;
    } else if (key == "CELL_TYPES") {
      std::size_t n;
      in >> n;
      vtk.cell_types.resize(n);
      for (auto& t : vtk.cell_types) in >> t;
    } else if (key == "POINT_DATA") {
      in >> section_size;
      section = &vtk.point_data;
    } else if (key == "CELL_DATA") {
      in >> section_size;
      section = &vtk.cell_data;
    } else if (key == "SCALARS") {
      if (section == nullptr) throw fail("SCALARS outside a data section");
      std::string name, type, lt, table;
      int ncomp;
      in >> name >> type >> ncomp >> lt >> table;
      std::vector<double>& values = (*section)[name];
      values.resize(section_size);
      for (auto& v : values) in >> v;
    } else {
      throw fail("unexpected token '" + key + "'");
    }
    if (!in) throw fail("truncated after " + key);
  }
  return vtk;
}

const char* const kCsvHeader =
    "delta,reynolds,alpha,pstar,nr,ntheta,iterations,converged,residual,psi_min,psi_max,"
    "r_min,theta_min,r_max,theta_max,w_max,pos_vortices,neg_vortices";

void write_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    const ExtremaRecord& e = r.extrema;
    out << fmt(r.params.delta()) << ',' << fmt(r.params.reynolds()) << ','
        << fmt(r.params.alpha()) << ',' << fmt(r.params.pstar()) << ',' << r.nr << ','
        << r.ntheta << ',' << r.iterations << ',' << (r.converged ? "true" : "false") << ','
        << fmt(r.residual) << ',' << fmt(e.psi_min) << ',' << fmt(e.psi_max) << ','
        << fmt(e.at_min.r) << ',' << fmt(e.at_min.theta) << ',' << fmt(e.at_max.r) << ','
        << fmt(e.at_max.theta) << ',' << fmt(e.w_max) << ',' << r.positive_vortices << ','
        << r.negative_vortices << '\n';
  }
}

void export_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCategory::io, "cannot open " + path + " for writing");
  write_csv(records, out);
  if (!out) throw Error(ErrorCategory::io, "write failed: " + path);
}

}  // namespace curvedpipe
