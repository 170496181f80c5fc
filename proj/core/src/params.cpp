#include "curvedpipe/params.hpp"

#include <cmath>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

FlowParams::FlowParams(double delta, double reynolds, double alpha, double pstar)
    : delta_(delta), reynolds_(reynolds), alpha_(alpha), pstar_(pstar) {
  require(std::isfinite(delta) && delta >= 0.0 && delta < 1.0, "delta must lie in [0,1)");
  require(std::isfinite(reynolds) && reynolds >= 0.0, "reynolds must be finite and >= 0");
  require(std::isfinite(alpha), "alpha must be finite");
  require(std::isfinite(pstar) && pstar > 0.0, "pstar must be finite and > 0");
}

}  // namespace curvedpipe
