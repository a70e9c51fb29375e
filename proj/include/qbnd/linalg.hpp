#ifndef QBND_LINALG_HPP
#define QBND_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

#include "qbnd/errors.hpp"

namespace qbnd {

using Cplx = std::complex<double>;

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
/// ascending; the columns of `vectors` are the matching orthonormal
/// eigenvectors.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

/// Decomposes a Hermitian matrix. The input must satisfy
/// max|H - H^dag| <= sym_tol * max|H|; it is then symmetrized as
/// (H + H^dag)/2 before the solve so results are deterministic under
/// roundoff.
EigenDecomposition herm_eig(const Eigen::MatrixXcd& H, double sym_tol = 1e-10);

/// Traces out one tensor factor of a (d1*d2) x (d1*d2) matrix. Factor 1 is
/// the left (row-major) factor, matching kron below: which = 1 returns the
/// d2 x d2 marginal, which = 2 the d1 x d1 one.
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& M, Eigen::Index d1,
                               Eigen::Index d2, int which);

/// Vectorization |M>> = (M (x) I) sum_j |jj>, i.e. component k*d + j holds
/// M(k, j). me_unvec inverts the same index map.
Eigen::VectorXcd me_vec(const Eigen::MatrixXcd& M);
Eigen::MatrixXcd me_unvec(const Eigen::VectorXcd& v);

/// Unitary polar factor of a square matrix: the unitary U maximizing
/// Re tr(U^dag M), with the achieved value equal to the trace norm of M.
/// Singular directions are completed deterministically (SVD with the
/// largest-magnitude entry of each left singular vector made real
/// positive).
Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& M);

/// Sum of singular values.
double trace_norm(const Eigen::MatrixXcd& M);

/// Largest absolute entry; 0 for empty matrices.
double max_abs(const Eigen::MatrixXcd& M);

/// Kronecker product. (A (x) B)(i*rB + k, j*cB + l) = A(i, j) * B(k, l).
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a,
          const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar =
      typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                           typename DerivedB::Scalar>::ReturnType;
  const typename DerivedA::PlainObject A = a.derived();
  const typename DerivedB::PlainObject B = b.derived();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(A.rows() * B.rows(),
                                                            A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) =
          A(i, j) * B.template cast<Scalar>();
  return out;
}

}  // namespace qbnd

#endif  // QBND_LINALG_HPP
