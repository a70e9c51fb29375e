#include "qbnd/lp.hpp"

#include <limits>
#include <vector>

#include "qbnd/errors.hpp"

namespace qbnd {

namespace {

// Full-tableau simplex on T = [A | b] with an explicit basis and a reduced
// cost row maintained by pivoting. Bland's rule: entering column = lowest
// index with negative reduced cost, leaving row = lowest basic index among
// the minimum-ratio ties.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd T, Eigen::RowVectorXd cost, std::vector<int> basis,
          double tol)
      : T_(std::move(T)), cost_(std::move(cost)), basis_(std::move(basis)),
        tol_(tol) {}

  // Returns false if the problem is unbounded in the current objective.
  bool iterate(int forbidden_from = std::numeric_limits<int>::max()) {
    const Eigen::Index m = T_.rows();
    const Eigen::Index n = T_.cols() - 1;
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j >= forbidden_from) continue;
        if (cost_(j) < -tol_) { enter = j; break; }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best_ratio = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (T_(i, enter) <= tol_) continue;
        const double ratio = T_(i, n) / T_(i, enter);
        if (leave < 0 || ratio < best_ratio - tol_ ||
            (ratio < best_ratio + tol_ && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index row, Eigen::Index col) {
    T_.row(row) /= T_(row, col);
    for (Eigen::Index i = 0; i < T_.rows(); ++i) {
      if (i == row) continue;
      const double f = T_(i, col);
      if (f != 0.0) T_.row(i) -= f * T_.row(row);
    }
    const double cf = cost_(col);
    if (cf != 0.0) cost_ -= cf * T_.row(row);
    basis_[row] = static_cast<int>(col);
  }

  Eigen::MatrixXd& T() { return T_; }
  Eigen::RowVectorXd& cost() { return cost_; }
  std::vector<int>& basis() { return basis_; }
  double tol() const { return tol_; }

 private:
  Eigen::MatrixXd T_;
  Eigen::RowVectorXd cost_;
  std::vector<int> basis_;
  double tol_;
};

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c, double tol) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n)
    throw DimensionMismatchError("solve_lp: inconsistent A, b, c sizes");

  // Phase 1: [A | I | b] with artificial basis, b flipped nonnegative.
  Eigen::MatrixXd T(m, n + m + 1);
  T.leftCols(n) = A;
  T.middleCols(n, m) = Eigen::MatrixXd::Identity(m, m);
  T.col(n + m) = b;
  for (Eigen::Index i = 0; i < m; ++i)
    if (T(i, n + m) < 0) T.row(i) = -T.row(i);

  std::vector<int> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = static_cast<int>(n + i);

  // Reduced phase-1 costs: artificials cost 1, so subtract the row sums.
  Eigen::RowVectorXd cost1 = Eigen::RowVectorXd::Zero(n + m + 1);
  cost1.segment(n, m).setOnes();
  for (Eigen::Index i = 0; i < m; ++i) cost1 -= T.row(i);

  Tableau tab(std::move(T), cost1, basis, tol);
  tab.iterate();
  const double infeas = -tab.cost()(n + m);
  if (infeas > tol * std::max(1.0, b.cwiseAbs().maxCoeff())) {
    return {LpStatus::Infeasible, 0.0, Eigen::VectorXd()};
  }

  // Drive leftover artificials out of the basis; rows where that is
  // impossible are redundant and get pinned (all-zero, kept harmless).
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) continue;
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab.T()(i, j)) > tol) { enter = j; break; }
    }
    if (enter >= 0) tab.pivot(i, enter);
  }

  // Phase 2: rebuild reduced costs for the true objective.
  Eigen::RowVectorXd cost2 = Eigen::RowVectorXd::Zero(n + m + 1);
  cost2.head(n) = c.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const int bi = tab.basis()[i];
    if (bi < n && cost2(bi) != 0.0) cost2 -= cost2(bi) * tab.T().row(i);
  }
  tab.cost() = cost2;
  if (!tab.iterate(static_cast<int>(n)))
    return {LpStatus::Unbounded, 0.0, Eigen::VectorXd()};

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[i] < n) x(tab.basis()[i]) = tab.T()(i, n + m);
  }
  return {LpStatus::Optimal, c.dot(x), x};
}

}  // namespace qbnd
