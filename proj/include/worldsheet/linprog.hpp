#pragma once

#include <Eigen/Dense>

namespace worldsheet::lp {

struct Result {
  bool feasible = false;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// minimize c.x subject to A x = r, x >= lower.
///
/// Exhaustive enumeration of basic solutions; intended for the small systems
/// (<= ~24 variables, <= 7 equality rows) that arise when balancing dwell lengths.
/// A must have full row rank and c must be nonnegative, so the optimum is a vertex.
Result minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& r, const Eigen::VectorXd& c,
                const Eigen::VectorXd& lower, double tol = 1e-11);

}  // namespace worldsheet::lp
