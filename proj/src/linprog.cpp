#include "worldsheet/linprog.hpp"

#include "worldsheet/types.hpp"

#include <limits>
#include <vector>

namespace worldsheet::lp {

Result minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& r, const Eigen::VectorXd& c,
                const Eigen::VectorXd& lower, double tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (r.size() != m || c.size() != n || lower.size() != n) {
    throw PreconditionError("lp::minimize: dimension mismatch");
  }
  if (m > n) throw PreconditionError("lp::minimize: more equations than variables");
  const Eigen::VectorXd shifted = r - A * lower;

  Result best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  Eigen::MatrixXd B(m, m);
  while (true) {
    for (int j = 0; j < m; ++j) B.col(j) = A.col(idx[j]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (lu.rank() == m) {
      const Eigen::VectorXd yb = lu.solve(shifted);
      if ((B * yb - shifted).norm() <= 1e-9 * (1.0 + shifted.norm()) && yb.minCoeff() >= -tol) {
        Eigen::VectorXd x = lower;
        for (int j = 0; j < m; ++j) x[idx[j]] += std::max(0.0, yb[j]);
        const double obj = c.dot(x);
        if (obj < best.objective - 1e-14) {
          best.feasible = true;
          best.objective = obj;
          best.x = x;
        }
      }
    }
    // next combination
    int k = m - 1;
    while (k >= 0 && idx[k] == n - m + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

}  // namespace worldsheet::lp
