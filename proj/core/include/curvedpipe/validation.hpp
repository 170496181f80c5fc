#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "curvedpipe/stokes.hpp"

namespace curvedpipe {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  /// One line per check: PASS/FAIL, name, value, threshold, detail.
  void print(std::ostream& out) const;
};

enum class ValidationLevel { fast, full };

/// "fast" or "full"; anything else is a config error.
ValidationLevel parse_validation_level(std::string_view text);

/// L2 errors (plain dr dtheta measure) of the Stokes solve against the
/// manufactured field psi = (1 - r^2)^2 r sin(theta), w = (1 - r^2)(1 + r cos(theta) / 2),
/// p = r cos(theta), with the loads computed from stokes_operator.
struct StokesMmsErrors {
  double velocity = 0.0;
  double axial = 0.0;
  double pressure = 0.0;
  double divergence = 0.0;  // divergence_residual of the discrete solution
};

StokesMmsErrors stokes_mms(int nr, int ntheta, double delta, const AssemblyOptions& options = {});

/// L2 error of the DG solution of r sigma + r U sigma_r + (rU)_r sigma / 2 = g
/// at delta = 0 with U = r (1 - r) and sigma = cos(2r) + r^2.
double transport_mms(int nr, int ntheta);

/// L2 error of the recovered stream function for the interpolated velocity
/// of psi = (1 - r^2)^2 r sin(theta). Recovery flips the sign.
double stream_function_mms(int nr, int ntheta, double delta);

/// Largest |div T| difference against the Cartesian oracle over randomized
/// trigonometric-polynomial fields and sample points.
double randomized_oracle_residual(int fields, unsigned seed);

/// log2(coarse / fine) for a mesh pair that halves h.
double observed_rate(double coarse_error, double fine_error);

ValidationReport run_validation(ValidationLevel level);

}  // namespace curvedpipe
