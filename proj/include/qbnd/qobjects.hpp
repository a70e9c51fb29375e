#ifndef QBND_QOBJECTS_HPP
#define QBND_QOBJECTS_HPP

#include <Eigen/Dense>
#include <vector>

#include "qbnd/linalg.hpp"
#include "qbnd/random.hpp"

namespace qbnd {

struct QuantumState {
  Eigen::Index dim = 0;
  Eigen::MatrixXcd rho;
};

struct Povm {
  Eigen::Index dim = 0;
  std::vector<Eigen::MatrixXcd> effects;
};

/// Channel in Choi form. The subsystem order is (output, input):
/// choi = (E (x) I)[Psi+] with the output factor on the left, so
/// partial_trace(choi, (d, d), 1) = I / d. A Kraus list may be attached.
struct QuantumChannel {
  Eigen::Index dim = 0;
  Eigen::MatrixXcd choi;
  std::vector<Eigen::MatrixXcd> kraus;
};

/// Invariant checks; they throw with a message naming the violated
/// invariant. PSD tolerances default to 1e-9, safe for the d <= 4 sizes
/// this library targets.
void validate_state(const QuantumState& s, double tol = 1e-10);
void validate_povm(const Povm& p, double tol = 1e-9);
void validate_channel(const QuantumChannel& c, double psd_tol = 1e-9);

QuantumState make_state(Eigen::MatrixXcd rho);
Povm make_povm(std::vector<Eigen::MatrixXcd> effects);
QuantumChannel channel_from_choi(Eigen::MatrixXcd choi);

/// Projector onto the maximally entangled vector, (1/d) sum_jk |jj><kk|.
Eigen::MatrixXcd max_ent_projector(Eigen::Index d);

QuantumChannel choi_from_kraus(const std::vector<Eigen::MatrixXcd>& kraus,
                               Eigen::Index d);

/// Spectral Kraus extraction: eigenvectors of d * choi with eigenvalue
/// above `threshold`, unvectorized and scaled.
std::vector<Eigen::MatrixXcd> kraus_from_choi(const QuantumChannel& ch,
                                              double threshold = 1e-10);

/// Channel mapping every input to sigma; choi = (1/d) sigma (x) I.
QuantumChannel erasure_channel(const QuantumState& sigma);

QuantumChannel identity_channel(Eigen::Index d);

/// Erasure onto the completely mixed state.
QuantumChannel depolarizing_channel(Eigen::Index d);

/// Tensor product of channels, reordering (B, A, B', A') -> (B, B', A, A')
/// so the result is again a valid Choi matrix.
QuantumChannel tensor_channels(const QuantumChannel& e, const QuantumChannel& f);

/// Applies the channel to a state: d * tr_2[ choi (I (x) rho^T) ].
Eigen::MatrixXcd apply_channel(const QuantumChannel& ch,
                               const Eigen::MatrixXcd& rho);

/// Shift-and-multiply unitaries Z^p W^q, Z = sum |j+1><j|,
/// W = sum w^j |j><j|, w = exp(2 pi i / d); listed as q major, p minor.
/// Their vectorizations me_vec(.)/sqrt(d) form an orthonormal basis of
/// maximally entangled vectors.
std::vector<Eigen::MatrixXcd> weyl_unitaries(Eigen::Index d);

/// The fixed 4x4 unitary mapping real vectors to two-qubit maximally
/// entangled vectors.
Eigen::MatrixXcd magic_basis();

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase correction.
Eigen::MatrixXcd random_unitary(Eigen::Index d, RandomSource& rng);

/// Random channel of Choi rank `rank`: K = G G^dag with G a d^2 x rank
/// Ginibre matrix, normalized through its input marginal. rank = d^2
/// gives an interior (full-rank Choi) channel almost surely.
QuantumChannel random_channel(Eigen::Index d, Eigen::Index rank,
                              RandomSource& rng);

QuantumState random_state(Eigen::Index d, RandomSource& rng);

Eigen::VectorXcd random_pure(Eigen::Index d, RandomSource& rng);

Povm random_povm(Eigen::Index d, int outcomes, RandomSource& rng);

}  // namespace qbnd

#endif  // QBND_QOBJECTS_HPP
