#include "qbnd/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qbnd {

double max_abs(const Eigen::MatrixXcd& M) {
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

EigenDecomposition herm_eig(const Eigen::MatrixXcd& H, double sym_tol) {
  if (H.rows() != H.cols())
    throw DimensionMismatchError("herm_eig: matrix is not square");
  if (!H.allFinite()) throw NonFiniteError("herm_eig: non-finite entries");
  const double scale = max_abs(H);
  const double defect = max_abs(H - H.adjoint());
  if (defect > sym_tol * scale)
    throw NonHermitianError("herm_eig: Hermitian symmetry tolerance violated");
  const Eigen::MatrixXcd sym = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error("herm_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& M, Eigen::Index d1,
                               Eigen::Index d2, int which) {
  if (d1 < 1 || d2 < 1 || M.rows() != M.cols() || M.rows() != d1 * d2)
    throw DimensionMismatchError("partial_trace: matrix is not (d1*d2)^2");
  if (which != 1 && which != 2)
    throw DimensionMismatchError("partial_trace: which must be 1 or 2");
  if (which == 1) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d2, d2);
    for (Eigen::Index i = 0; i < d1; ++i)
      out += M.block(i * d2, i * d2, d2, d2);
    return out;
  }
  Eigen::MatrixXcd out(d1, d1);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d1; ++j)
      out(i, j) = M.block(i * d2, j * d2, d2, d2).trace();
  return out;
}

Eigen::VectorXcd me_vec(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols())
    throw DimensionMismatchError("me_vec: matrix is not square");
  return M.reshaped<Eigen::RowMajor>();
}

Eigen::MatrixXcd me_unvec(const Eigen::VectorXcd& v) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
  if (d * d != v.size())
    throw DimensionMismatchError("me_unvec: length is not a perfect square");
  return v.reshaped<Eigen::RowMajor>(d, d);
}

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols())
    throw DimensionMismatchError("polar_unitary: matrix is not square");
  if (!M.allFinite()) throw NonFiniteError("polar_unitary: non-finite entries");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd U = svd.matrixU();
  Eigen::MatrixXcd V = svd.matrixV();
  // Joint column phases leave U S V^dag invariant but pin the completion of
  // zero singular directions: largest-magnitude entry of each left singular
  // vector made real positive.
  for (Eigen::Index i = 0; i < U.cols(); ++i) {
    Eigen::Index r = 0;
    U.col(i).cwiseAbs().maxCoeff(&r);
    const Cplx z = U(r, i);
    const double mag = std::abs(z);
    if (mag > 0) {
      const Cplx phase = std::conj(z) / mag;
      U.col(i) *= phase;
      V.col(i) *= phase;
    }
  }
  return U * V.adjoint();
}

double trace_norm(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues().sum();
}

}  // namespace qbnd
