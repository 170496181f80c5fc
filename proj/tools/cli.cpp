#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "curvedpipe/config.hpp"
#include "curvedpipe/error.hpp"
#include "curvedpipe/study.hpp"
#include "curvedpipe/validation.hpp"

namespace curvedpipe::cli {

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<int> nr;
  std::optional<int> ntheta;
  std::optional<double> tol;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--config", f.config_path, "TOML run configuration");
  cmd.add_option("--out-dir", f.out_dir, "output directory (overrides output_dir)");
  cmd.add_option("--nr", f.nr, "radial subdivisions");
  cmd.add_option("--ntheta", f.ntheta, "angular subdivisions");
  cmd.add_option("--tol", f.tol, "fixed-point tolerance");
}

RunConfig load(const CommonFlags& f) {
  RunConfig cfg = f.config_path.empty() ? RunConfig{} : parse_config(f.config_path);
  if (!f.out_dir.empty()) cfg.output_dir = f.out_dir;
  if (f.nr) cfg.nr = *f.nr;
  if (f.ntheta) cfg.ntheta = *f.ntheta;
  if (f.tol) cfg.tol = *f.tol;
  cfg.validate();
  return cfg;
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCategory::io, "cannot create output directory " + dir + ": " + ec.message());
  return dir;
}

std::string describe(const PointResult& p) {
  const ExtremaRecord& e = p.record.extrema;
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "delta=%g Re=%g alpha=%g pstar=%g converged=%s iterations=%d residual=%.3e\n"
                "  psi_min=%.6e psi_max=%.6e w_max=%.6e vortices=(%d,%d)\n"
                "  equivalence=%.3e divergence=%.3e\n",
                p.params.delta(), p.params.reynolds(), p.params.alpha(), p.params.pstar(),
                p.converged ? "yes" : "no", p.record.iterations, p.record.residual, e.psi_min,
                e.psi_max, e.w_max, p.census.positive, p.census.negative, p.equivalence,
                p.divergence);
  return buf;
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::config:
    case ErrorCategory::domain:
    case ErrorCategory::io: return kConfigError;
    case ErrorCategory::convergence: return kNotConverged;
    case ErrorCategory::linear_solver: return kLinearSolverError;
    case ErrorCategory::internal: return kValidationFailed;
  }
  return kValidationFailed;
}

int cmd_run(const CommonFlags& flags, std::ostream& out) {
  const RunConfig cfg = load(flags);
  const auto dir = prepare_dir(cfg.output_dir);
  Study study(cfg);
  const PointResult p = study.solve(cfg.params());
  study.write_vtk(p, (dir / "state.vtk").string());
  export_csv({p.record}, (dir / "result.csv").string());
  out << describe(p);
  if (!p.converged) {
    throw Error(ErrorCategory::convergence, "fixed point did not converge (residual " +
                                                std::to_string(p.record.residual) + ")");
  }
  return kOk;
}

struct SweepFlags {
  std::string param;
  std::string values;
  std::string range;
  bool cold = false;
  bool vtk_per_point = false;
};

int cmd_sweep(const CommonFlags& flags, const SweepFlags& sf, std::ostream& out) {
  const RunConfig cfg = load(flags);
  SweepPlan plan;
  plan.parameter = parse_sweep_parameter(sf.param);
  if (sf.values.empty() == sf.range.empty()) {
    throw Error(ErrorCategory::config, "give exactly one of --values and --range");
  }
  plan.values = sf.values.empty() ? parse_value_range(sf.range) : parse_value_list(sf.values);
  const auto dir = prepare_dir(cfg.output_dir);

  SweepOptions opts;
  opts.cold = sf.cold;
  if (sf.vtk_per_point) opts.vtk_dir = dir.string();
  Study study(cfg);
  const std::vector<PointResult> points = run_sweep(study, plan, opts);

  std::vector<SweepRecord> records;
  int failed = 0;
  for (const PointResult& p : points) {
    records.push_back(p.record);
    if (!p.converged) ++failed;
    out << describe(p);
  }
  export_csv(records, (dir / "results.csv").string());
  if (failed > 0) {
    throw Error(ErrorCategory::convergence,
                std::to_string(failed) + " of " + std::to_string(points.size()) + " points did not converge");
  }
  return kOk;
}

int cmd_validate(const std::string& level, std::ostream& out, std::ostream& err) {
  const ValidationReport report = run_validation(parse_validation_level(level));
  report.print(out);
  if (report.passed()) return kOk;
  int failed = 0;
  for (const CheckResult& c : report.checks) failed += c.passed ? 0 : 1;
  err << "error: validation: " << failed << " check(s) failed\n";
  return kValidationFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fully developed second-grade flow in a curved pipe"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  CLI::App* run_cmd = app.add_subcommand("run", "solve one parameter point");
  add_common(*run_cmd, run_flags);

  CommonFlags sweep_flags;
  SweepFlags sf;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "solve a list of Reynolds or alpha values");
  add_common(*sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--param", sf.param, "reynolds or alpha")->required();
  sweep_cmd->add_option("--values", sf.values, "comma-separated values");
  sweep_cmd->add_option("--range", sf.range, "start:stop:step");
  sweep_cmd->add_flag("--cold", sf.cold, "start every point from rest");
  sweep_cmd->add_flag("--write-vtk-per-point", sf.vtk_per_point, "write point_<i>.vtk");

  std::string level = "fast";
  CLI::App* validate_cmd = app.add_subcommand("validate", "run the verification suite");
  validate_cmd->add_option("--level", level, "fast or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: config: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*run_cmd) return cmd_run(run_flags, out);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, sf, out);
    return cmd_validate(level, out, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.category()) << ": " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kValidationFailed;
  }
}

}  // namespace curvedpipe::cli
