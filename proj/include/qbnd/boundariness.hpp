#ifndef QBND_BOUNDARINESS_HPP
#define QBND_BOUNDARINESS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qbnd/qobjects.hpp"

namespace qbnd {

enum class Method { closed_form, magic_basis, iterative };

const char* method_name(Method m);

/// Result of a boundariness computation: the value b in [0, 1/2], the
/// witness that attains it, and the boundary complement G with
/// y = b * optimizer + (1 - b) * G. Residuals record the named numerical
/// checks performed on the way.
struct BoundarinessReport {
  double b = 0.0;
  Method method = Method::closed_form;
  Eigen::MatrixXcd optimizer_unitary;        // channels
  Eigen::VectorXcd optimizer_vector;         // states: best pure state
  int optimizer_index = -1;                  // POVMs: concentrated outcome
  std::vector<Eigen::MatrixXcd> complement;  // rho / choi (singleton) or effects
  int iterations = 0;
  int restarts_used = 0;
  bool converged = true;
  std::vector<double> objective_history;     // non-decreasing by construction
  std::map<std::string, double> residuals;
};

enum class SeedStrategy { weyl_plus_haar, haar_only };

struct OptimizerConfig {
  int restarts = 16;
  int max_iters = 500;
  double rel_tol = 1e-12;
  std::uint64_t seed = 12345;
  SeedStrategy seed_strategy = SeedStrategy::weyl_plus_haar;
  /// Extra starting unitaries tried after the Weyl frame (e.g. the product
  /// of factor optimizers when working on a tensor-product channel).
  std::vector<Eigen::MatrixXcd> extra_seeds;
};

struct EntangledRadius {
  double value = 0.0;  // max over unitaries of <<U| A |U>> / d
  Eigen::MatrixXcd unitary;
  int iterations = 0;
  int restarts_used = 0;
  bool converged = true;
  std::vector<double> history;  // raw objective <<U| A |U>> of the best restart
};

/// b(rho) = smallest eigenvalue; the witness is the matching eigenvector
/// (the best-distinguishable pure state) and the complement is the
/// rescaled singular residual state.
BoundarinessReport b_state(const QuantumState& rho);

/// b(M) = min_j smallest eigenvalue of E_j; the witness is the trivial
/// POVM concentrated on the minimizing outcome.
BoundarinessReport b_povm(const Povm& m);

/// Weight t_F(E) = 1 / lambda_max( sqrt(J_E) J_F^{-1} sqrt(J_E) ).
/// F must be interior (smallest Choi eigenvalue > 1e-10).
double weight_t_channel(const QuantumChannel& f, const QuantumChannel& e);

/// Maximally entangled numerical radius of a PSD matrix by monotone
/// ascent over maximally entangled vectors: x = me_vec(U),
/// U <- polar_unitary(me_unvec(A x)). Multi-start over the Weyl frame
/// plus Haar seeds; best restart wins, earliest seed breaks ties.
EntangledRadius entangled_radius_iterative(const Eigen::MatrixXcd& a,
                                           const OptimizerConfig& cfg = {});

/// General channel boundariness b(F) = d / max_U <<U| J_F^{-1} |U>>,
/// evaluated with the iterative entangled-radius ascent. The report
/// carries the optimal unitary, the validated boundary complement and the
/// weight-function cross-check.
BoundarinessReport b_channel(const QuantumChannel& f,
                             const OptimizerConfig& cfg = {});

/// Qubit closed form b(F) = 2 / lambda_max(W^dag J_F^{-1} W + transpose)
/// via the magic basis; the optimizer unitary is reconstructed from the
/// leading eigenvector.
BoundarinessReport b_channel_qubit(const QuantumChannel& f);

/// Erasure channel closed form b = 1 / tr(sigma^{-1}); the objective is
/// unitary-invariant, so the identity is returned as witness.
BoundarinessReport b_erasure(const QuantumState& sigma);

/// Boundary predicate: smallest Choi eigenvalue <= tol.
bool is_boundary(const QuantumChannel& ch, double tol = 1e-8);

/// m(rho) = 1 - largest eigenvalue.
double mixedness_state(const QuantumState& rho);

/// A verified two-term decomposition y = b x + (1 - b) G.
struct Decomposition {
  double b = 0.0;
  std::vector<Eigen::MatrixXcd> x;
  std::vector<Eigen::MatrixXcd> complement;
};

Decomposition decompose(const QuantumState& y, const BoundarinessReport& r);
Decomposition decompose(const Povm& y, const BoundarinessReport& r);
Decomposition decompose(const QuantumChannel& y, const BoundarinessReport& r);

}  // namespace qbnd

#endif  // QBND_BOUNDARINESS_HPP
