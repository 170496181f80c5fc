#include "curvedpipe/study.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

Study::Study(const RunConfig& config) : config_(config) {
  config_.validate();
  disc_ = std::make_shared<const Discretization>(config_.nr, config_.ntheta,
                                                 config_.quadrature_degree);
  stokes_ = std::make_unique<StokesOperator>(disc_, config_.delta);
  stream_ = std::make_unique<StreamFunctionRecovery>(disc_, config_.delta);
}

PointResult Study::solve(const FlowParams& target, bool warm) {
  const bool use_warm = warm && last_state_.has_value();
  const SolverState* init = use_warm ? &*last_state_ : nullptr;

  PointResult out;
  out.params = target;
  out.record.params = target;
  out.record.nr = config_.nr;
  out.record.ntheta = config_.ntheta;

  if (config_.continuation) {
    const FlowParams* from = use_warm ? &*last_params_ : nullptr;
    ContinuationResult c = continuation_solve(*stokes_, target, config_.schedule,
                                              config_.fixed_point_options(), init, from);
    for (const ContinuationStep& s : c.steps) out.record.iterations += s.report.iterations;
    out.record.residual = c.steps.empty() ? 0.0 : c.steps.back().report.last_residual();
    out.converged = c.converged;
    out.state = std::move(c.state);
  } else {
    FixedPointResult fp = fixed_point(*stokes_, target, init, config_.fixed_point_options());
    out.record.iterations = fp.report.iterations;
    out.record.residual = fp.report.last_residual();
    out.converged = fp.report.converged;
    out.state = std::move(fp.state);
  }
  out.record.converged = out.converged;

  out.psi = stream_->recover(out.state.velocity);
  out.record.extrema = extrema(out.psi, out.state.w);
  out.census = vortex_census(*disc_, out.psi, config_.census_epsilon);
  out.record.positive_vortices = out.census.positive;
  out.record.negative_vortices = out.census.negative;
  out.equivalence = equivalence_residual(*stokes_, out.state, target);
  out.divergence = divergence_residual(*stokes_, out.state);

  if (out.converged) {
    last_state_ = out.state;
    last_params_ = target;
  }
  return out;
}

void Study::write_vtk(const PointResult& point, const std::string& path) const {
  export_vtk(*disc_, point.state, point.psi, path);
}

FlowParams SweepPlan::point(const FlowParams& base, double value) const {
  return parameter == SweepParameter::reynolds ? base.with_reynolds(value)
                                               : base.with_alpha(value);
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "reynolds") return SweepParameter::reynolds;
  if (name == "alpha") return SweepParameter::alpha;
  throw Error(ErrorCategory::config, "sweep parameter must be reynolds or alpha, got '" + name + "'");
}

namespace {

double parse_number(const std::string& token, const std::string& what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (token.empty() || end == begin || *end != '\0' || !std::isfinite(v)) {
    throw Error(ErrorCategory::config, what + ": cannot parse '" + token + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& t : split(text, ',')) out.push_back(parse_number(t, "values"));
  if (out.empty()) throw Error(ErrorCategory::config, "values: empty list");
  return out;
}

std::vector<double> parse_value_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw Error(ErrorCategory::config, "range must be start:stop:step");
  const double start = parse_number(parts[0], "range");
  const double stop = parse_number(parts[1], "range");
  const double step = parse_number(parts[2], "range");
  if (step == 0.0 || (stop - start) / step < 0.0) {
    throw Error(ErrorCategory::config, "range step does not lead from start to stop");
  }
  const auto n = static_cast<long>(std::floor((stop - start) / step + 0.1));
  std::vector<double> out;
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::vector<PointResult> run_sweep(Study& study, const SweepPlan& plan,
                                   const SweepOptions& options) {
  if (plan.values.empty()) throw Error(ErrorCategory::config, "sweep needs at least one value");
  const FlowParams base = study.config().params();
  std::vector<PointResult> out;
  out.reserve(plan.values.size());
  for (std::size_t i = 0; i < plan.values.size(); ++i) {
    FlowParams target;
    try {
      target = plan.point(base, plan.values[i]);
    } catch (const Error& e) {
      throw Error(ErrorCategory::config, e.what());
    }
    out.push_back(study.solve(target, !options.cold));
    if (options.vtk_dir) {
      const auto path = std::filesystem::path(*options.vtk_dir) /
                        ("point_" + std::to_string(i) + ".vtk");
      study.write_vtk(out.back(), path.string());
    }
  }
  return out;
}

}  // namespace curvedpipe
