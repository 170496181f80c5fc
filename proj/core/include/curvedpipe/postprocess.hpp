#pragma once

#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "curvedpipe/discretization.hpp"
#include "curvedpipe/linear_solver.hpp"
#include "curvedpipe/params.hpp"
#include "curvedpipe/state.hpp"

namespace curvedpipe {

/// Stream function on the scalar P2 space (axis collapsed, zero on the wall).
///
/// Orientation: counter-clockwise circulation in the (r cos(theta), r sin(theta))
/// plane is positive, i.e. u = (1/(rB)) psi_theta and v = -(1/B) psi_r. This
/// is the negative of the classical toroidal convention. psi solves
///   (psi_r, phi_r) + (psi_theta, phi_theta) = (-B v, phi_r) + (rB u, phi_theta).
class StreamFunctionRecovery {
 public:
  StreamFunctionRecovery(std::shared_ptr<const Discretization> disc, double delta);

  DiscreteField recover(const DiscreteField& velocity) const;

 private:
  std::shared_ptr<const Discretization> disc_;
  double delta_;
  SparseMatrix expansion_;
  SparseLuSolver solver_;
};

DiscreteField recover_stream_function(const std::shared_ptr<const Discretization>& disc,
                                      const SolverState& state, double delta);

struct ExtremaRecord {
  double psi_min = 0.0;
  double psi_max = 0.0;
  Point at_min;
  Point at_max;
  double w_max = 0.0;
  Point at_w_max;
};

/// Nodal extrema of psi and of w (vertices and edge midpoints).
ExtremaRecord extrema(const DiscreteField& psi, const DiscreteField& w);

struct VortexComponent {
  int sign = 0;
  std::size_t elements = 0;
  double peak = 0.0;  // signed element-mean psi of largest magnitude
  Point at;           // centroid of the peak element
};

struct VortexSummary {
  int positive = 0;
  int negative = 0;
  std::vector<VortexComponent> components;
};

/// Connected components of the elements whose mean nodal psi exceeds
/// epsilon * max|psi|, and of the negative counterpart. Elements sharing a
/// mesh vertex are connected.
VortexSummary vortex_census(const Discretization& disc, const DiscreteField& psi,
                            double epsilon = 0.05);

/// Legacy ASCII VTK unstructured grid of the cross-section.
void export_vtk(const Discretization& disc, const SolverState& state, const DiscreteField& psi,
                const std::string& path);

struct VtkContents {
  std::size_t points = 0;
  std::size_t cells = 0;
  std::vector<int> cell_types;
  std::map<std::string, std::vector<double>> point_data;
  std::map<std::string, std::vector<double>> cell_data;
};

VtkContents read_vtk(const std::string& path);

struct SweepRecord {
  FlowParams params;
  int nr = 0;
  int ntheta = 0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
  ExtremaRecord extrema;
  int positive_vortices = 0;
  int negative_vortices = 0;
};

extern const char* const kCsvHeader;

void write_csv(const std::vector<SweepRecord>& records, std::ostream& out);
void export_csv(const std::vector<SweepRecord>& records, const std::string& path);

}  // namespace curvedpipe
