#ifndef QBND_LP_HPP
#define QBND_LP_HPP

#include <Eigen/Dense>

namespace qbnd {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  Eigen::VectorXd x;
};

/// Minimizes c.x subject to A x = b, x >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule (anti-cycling);
/// intended for the tiny problems produced by the polytope module,
/// roughly <= 20 variables.
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c, double tol = 1e-11);

}  // namespace qbnd

#endif  // QBND_LP_HPP
