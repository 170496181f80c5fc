#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace curvedpipe {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Direct sparse LU with COLAMD ordering. Every solve is checked against the
/// stored operator; a relative residual above the tolerance after one step of
/// iterative refinement raises a linear-solver error.
class SparseLuSolver {
 public:
  explicit SparseLuSolver(double residual_tolerance = 1e-10)
      : tolerance_(residual_tolerance) {}

  void factorize(const SparseMatrix& matrix);
  bool ready() const noexcept { return ready_; }
  Eigen::Index rows() const noexcept { return matrix_.rows(); }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  double last_residual() const noexcept { return last_residual_; }

 private:
  double tolerance_;
  bool ready_ = false;
  SparseMatrix matrix_;
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  mutable double last_residual_ = 0.0;
};

/// One-shot factorize-and-solve.
Eigen::VectorXd solve_sparse(const SparseMatrix& matrix, const Eigen::VectorXd& rhs);

}  // namespace curvedpipe
