#include "curvedpipe/linear_solver.hpp"

#include <cstdio>
#include <string>

#include "curvedpipe/error.hpp"

namespace curvedpipe {

namespace {

std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

void SparseLuSolver::factorize(const SparseMatrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCategory::linear_solver, "factorize: matrix is not square");
  }
  matrix_ = matrix;
  matrix_.makeCompressed();
  lu_.analyzePattern(matrix_);
  lu_.factorize(matrix_);
  if (lu_.info() != Eigen::Success) {
    throw Error(ErrorCategory::linear_solver, "factorization failed: " + lu_.lastErrorMessage());
  }
  ready_ = true;
}

Eigen::VectorXd SparseLuSolver::solve(const Eigen::VectorXd& rhs) const {
  if (!ready_) throw Error(ErrorCategory::internal, "solve called before factorize");
  if (rhs.size() != matrix_.rows()) {
    throw Error(ErrorCategory::linear_solver, "solve: right-hand side has wrong length");
  }
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) {
    last_residual_ = 0.0;
    return Eigen::VectorXd::Zero(rhs.size());
  }
  Eigen::VectorXd x = lu_.solve(rhs);
  Eigen::VectorXd res = rhs - matrix_ * x;
  last_residual_ = res.norm() / bnorm;
  if (!(last_residual_ <= 1e-13)) {
    x += lu_.solve(res);
    res = rhs - matrix_ * x;
    last_residual_ = res.norm() / bnorm;
  }
  if (!(last_residual_ <= tolerance_)) {
    throw Error(ErrorCategory::linear_solver,
                "relative residual " + format_sci(last_residual_) + " exceeds tolerance");
  }
  return x;
}

Eigen::VectorXd solve_sparse(const SparseMatrix& matrix, const Eigen::VectorXd& rhs) {
  SparseLuSolver solver;
  solver.factorize(matrix);
  return solver.solve(rhs);
}

}  // namespace curvedpipe
