#pragma once

#include <Eigen/Core>

namespace iontrap {

struct JacobiOptions {
  /// Stop when the off-diagonal Frobenius norm drops below
  /// threshold * ||A||_F.
  double threshold = 1e-14;
  int max_sweeps = 100;
};

struct SymmetricEigen {
  Eigen::VectorXd values;   // unsorted, in the order Jacobi leaves them
  Eigen::MatrixXd vectors;  // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations for a real symmetric matrix. Only the upper
/// triangle is read. Throws ConvergenceError when the sweep cap is hit.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd &a, const JacobiOptions &options = {});

} // namespace iontrap
