#pragma once

#include <array>
#include <functional>
#include <memory>

#include <Eigen/Core>

#include "curvedpipe/discretization.hpp"
#include "curvedpipe/linear_solver.hpp"
#include "curvedpipe/params.hpp"

namespace curvedpipe {

/// Hooks for mutation testing of the assembled forms. Production code never
/// sets these.
struct AssemblyOptions {
  /// Multiplies the (B^2 + B2^2) u coefficient of a1.
  double a1_mass_scale = 1.0;
};

/// Element matrices of the weighted forms (rows: test, columns: trial),
/// integrated with the plain dr dtheta measure.
struct LocalForms {
  Eigen::Matrix<double, 6, 6> a;
  Eigen::Matrix<double, 6, 6> a1_u, a1_v;  // u-test row: trial u, trial v
  Eigen::Matrix<double, 6, 6> a2_u, a2_v;  // v-test row: trial u, trial v
  Eigen::Matrix<double, 6, 6> a3;
  Eigen::Matrix<double, 6, 3> b1, b2;      // velocity test, pressure trial
  Eigen::Matrix<double, 3, 6> div_u, div_v;  // pressure test, velocity trial
};

LocalForms local_forms(const Discretization& disc, std::size_t k, double delta,
                       const AssemblyOptions& options = {});

/// Constrained saddle operator over (U, p, lambda):
///   [ A  G  0 ] [U]   [f]
///   [ D  0  m ] [p] = [0]
///   [ 0  m' 0 ] [l]   [0]
/// where m holds the dr dtheta integrals of the pressure basis.
struct SaddleSystem {
  SparseMatrix matrix;
  SparseMatrix divergence;  // D alone
  Eigen::Index n_velocity = 0;
  Eigen::Index n_pressure = 0;
  Eigen::Index size() const noexcept { return n_velocity + n_pressure + 1; }
};

SaddleSystem assemble_secondary(const Discretization& disc, double delta,
                                const AssemblyOptions& options = {});

struct AxialSystem {
  SparseMatrix matrix;
  Eigen::VectorXd unit_forcing;  // (r^2 B, zeta); scaled by p* in stokes_rhs
};

AxialSystem assemble_axial(const Discretization& disc, double delta);

struct StokesRhs {
  Eigen::VectorXd secondary;  // length SaddleSystem::size()
  Eigen::VectorXd axial;
};

/// Pointwise weighted stresses (sigma1, sigma2, sigma3) at a parametric point.
using PointLoad = std::function<std::array<double, 3>(const Point&)>;

/// Right-hand sides (sigma_i, zeta) and (r^2 B p* + sigma3, zeta).
StokesRhs stokes_rhs(const Discretization& disc, const std::array<DiscreteField, 3>& sigma,
                     const FlowParams& params);
StokesRhs stokes_rhs(const Discretization& disc, const PointLoad& sigma, const FlowParams& params);

struct StokesSolution {
  DiscreteField velocity;  // (u, v) on Discretization::velocity()
  DiscreteField w;
  DiscreteField p;
  double multiplier = 0.0;
};

/// Saddle and axial operators of one (mesh, delta), factorized once.
class StokesOperator {
 public:
  StokesOperator(std::shared_ptr<const Discretization> disc, double delta,
                 const AssemblyOptions& options = {});

  const Discretization& discretization() const noexcept { return *disc_; }
  const std::shared_ptr<const Discretization>& shared_discretization() const noexcept {
    return disc_;
  }
  double delta() const noexcept { return delta_; }
  const SaddleSystem& secondary() const noexcept { return saddle_; }
  const AxialSystem& axial() const noexcept { return axial_; }

  StokesSolution solve(const StokesRhs& rhs) const;

 private:
  std::shared_ptr<const Discretization> disc_;
  double delta_;
  SaddleSystem saddle_;
  AxialSystem axial_;
  SparseLuSolver saddle_solver_;
  SparseLuSolver axial_solver_;
};

}  // namespace curvedpipe
