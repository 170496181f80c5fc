#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "curvedpipe/config.hpp"
#include "curvedpipe/postprocess.hpp"
#include "curvedpipe/solver.hpp"

namespace curvedpipe {

/// Solved parameter point with its postprocessed quantities.
struct PointResult {
  FlowParams params;
  SolverState state;
  DiscreteField psi;
  SweepRecord record;
  VortexSummary census;
  bool converged = false;
  double equivalence = 0.0;
  double divergence = 0.0;
};

/// One mesh and one assembled Stokes operator shared by every point solved
/// through it. Points are solved in call order; a warm start reuses the last
/// converged state.
class Study {
 public:
  explicit Study(const RunConfig& config);

  const RunConfig& config() const noexcept { return config_; }
  const Discretization& discretization() const { return *disc_; }
  const StokesOperator& stokes() const { return *stokes_; }

  /// Solves `target`. With continuation enabled the solve marches from the
  /// last converged point (or from Re = alpha = 0 when `warm` is false or no
  /// point has converged yet); otherwise it runs one fixed point at `target`.
  /// Linear-solver failures propagate.
  PointResult solve(const FlowParams& target, bool warm = true);

  void write_vtk(const PointResult& point, const std::string& path) const;

 private:
  RunConfig config_;
  std::shared_ptr<const Discretization> disc_;
  std::unique_ptr<StokesOperator> stokes_;
  std::unique_ptr<StreamFunctionRecovery> stream_;
  std::optional<SolverState> last_state_;
  std::optional<FlowParams> last_params_;
};

enum class SweepParameter { reynolds, alpha };

struct SweepPlan {
  SweepParameter parameter = SweepParameter::reynolds;
  std::vector<double> values;

  FlowParams point(const FlowParams& base, double value) const;
};

/// "reynolds" or "alpha".
SweepParameter parse_sweep_parameter(const std::string& name);
/// Comma-separated list, e.g. "1,2,3".
std::vector<double> parse_value_list(const std::string& text);
/// "start:stop:step", inclusive of stop up to a tenth of a step.
std::vector<double> parse_value_range(const std::string& text);

struct SweepOptions {
  bool cold = false;
  /// When set, each point also writes point_<index>.vtk into this directory.
  std::optional<std::string> vtk_dir;
};

/// Solves the values in list order and returns one result per value. Failed
/// points are kept (converged = false) and the sweep continues from the last
/// converged state.
std::vector<PointResult> run_sweep(Study& study, const SweepPlan& plan,
                                   const SweepOptions& options = {});

}  // namespace curvedpipe
