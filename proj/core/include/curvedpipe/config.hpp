#pragma once

#include <string>

#include "curvedpipe/params.hpp"
#include "curvedpipe/solver.hpp"

namespace curvedpipe {

struct RunConfig {
  double delta = 0.0;
  double reynolds = 0.0;
  double alpha = 0.0;
  double pstar = 4.0;
  int nr = 16;
  int ntheta = 48;
  double tol = 1e-8;
  int max_iter = 200;
  int quadrature_degree = 6;
  double census_epsilon = 0.05;
  std::string output_dir = ".";
  bool continuation = true;
  ContinuationSchedule schedule;

  FlowParams params() const { return {delta, reynolds, alpha, pstar}; }
  FixedPointOptions fixed_point_options() const { return {tol, max_iter}; }
  /// Throws a config error naming the offending field.
  void validate() const;
};

/// Reads a TOML file with flat top-level keys and an optional
/// [continuation] table (enabled, d_re, d_alpha, max_halvings). Unknown keys,
/// wrong value types and domain violations raise a config error.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_string(const std::string& text, const std::string& origin = "<string>");

}  // namespace curvedpipe
