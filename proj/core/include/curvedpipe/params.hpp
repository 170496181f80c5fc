#pragma once

namespace curvedpipe {

/// Nondimensional flow parameters.
///
/// The second Rivlin-Ericksen ratio is not an independent input: the
/// compatibility condition alpha1 + alpha2 = 0 is built in, so alpha2()
/// always returns -alpha().
class FlowParams {
 public:
  FlowParams() = default;
  FlowParams(double delta, double reynolds, double alpha, double pstar);

  double delta() const noexcept { return delta_; }
  double reynolds() const noexcept { return reynolds_; }
  double alpha() const noexcept { return alpha_; }
  double alpha2() const noexcept { return -alpha_; }
  double pstar() const noexcept { return pstar_; }

  FlowParams with_reynolds(double re) const { return {delta_, re, alpha_, pstar_}; }
  FlowParams with_alpha(double a) const { return {delta_, reynolds_, a, pstar_}; }

 private:
  double delta_ = 0.0;
  double reynolds_ = 0.0;
  double alpha_ = 0.0;
  double pstar_ = 4.0;
};

}  // namespace curvedpipe
