#include "qbnd/qobjects.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qbnd {

namespace {

void check_square_finite(const Eigen::MatrixXcd& m, Eigen::Index d,
                         const char* what) {
  if (m.rows() != d || m.cols() != d)
    throw DimensionMismatchError(std::string(what) + ": wrong dimensions");
  if (!m.allFinite())
    throw NonFiniteError(std::string(what) + ": non-finite entries");
}

}  // namespace

void validate_state(const QuantumState& s, double tol) {
  if (s.dim < 1) throw DimensionMismatchError("state: dim must be positive");
  check_square_finite(s.rho, s.dim, "state rho");
  const double scale = std::max(1.0, max_abs(s.rho));
  if (max_abs(s.rho - s.rho.adjoint()) > tol * scale)
    throw Error("state: rho is not Hermitian");
  if (std::abs(s.rho.trace().real() - 1.0) > tol ||
      std::abs(s.rho.trace().imag()) > tol)
    throw Error("state: trace is not 1");
  const EigenDecomposition eig = herm_eig(s.rho);
  if (eig.values(0) < -tol) throw NotPsdError("state: negative eigenvalue");
}

void validate_povm(const Povm& p, double tol) {
  if (p.dim < 1) throw DimensionMismatchError("povm: dim must be positive");
  if (p.effects.empty()) throw Error("povm: no effects");
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(p.dim, p.dim);
  for (std::size_t j = 0; j < p.effects.size(); ++j) {
    const auto& e = p.effects[j];
    check_square_finite(e, p.dim, "povm effect");
    if (max_abs(e - e.adjoint()) > 1e-10 * std::max(1.0, max_abs(e)))
      throw Error("povm: effect " + std::to_string(j) + " is not Hermitian");
    const EigenDecomposition eig = herm_eig(e);
    if (eig.values(0) < -1e-10 || eig.values(eig.values.size() - 1) > 1.0 + 1e-10)
      throw Error("povm: effect " + std::to_string(j) +
                  " has spectrum outside [0, 1]");
    sum += e;
  }
  if (max_abs(sum - Eigen::MatrixXcd::Identity(p.dim, p.dim)) > tol)
    throw Error("povm: effects do not sum to the identity");
}

void validate_channel(const QuantumChannel& c, double psd_tol) {
  if (c.dim < 1) throw DimensionMismatchError("channel: dim must be positive");
  const Eigen::Index d2 = c.dim * c.dim;
  check_square_finite(c.choi, d2, "channel choi");
  if (max_abs(c.choi - c.choi.adjoint()) >
      1e-9 * std::max(1.0, max_abs(c.choi)))
    throw Error("channel: choi is not Hermitian");
  const EigenDecomposition eig = herm_eig(c.choi, 1e-9);
  if (eig.values(0) < -psd_tol)
    throw NotPsdError("channel: choi has a negative eigenvalue");
  if (std::abs(c.choi.trace().real() - 1.0) > 1e-10)
    throw Error("channel: choi trace is not 1");
  const Eigen::MatrixXcd marginal = partial_trace(c.choi, c.dim, c.dim, 1);
  if (max_abs(marginal - Eigen::MatrixXcd::Identity(c.dim, c.dim) / double(c.dim)) >
      1e-9)
    throw NotTracePreservingError("channel: tr_1 choi is not I/d");
  if (!c.kraus.empty()) {
    Eigen::MatrixXcd closure = Eigen::MatrixXcd::Zero(c.dim, c.dim);
    for (const auto& a : c.kraus) {
      check_square_finite(a, c.dim, "channel kraus");
      closure += a.adjoint() * a;
    }
    if (max_abs(closure - Eigen::MatrixXcd::Identity(c.dim, c.dim)) > 1e-9)
      throw NotTracePreservingError("channel: kraus closure is not I");
    const QuantumChannel rebuilt = choi_from_kraus(c.kraus, c.dim);
    if (max_abs(rebuilt.choi - c.choi) > 1e-9)
      throw InvalidChoiError("channel: kraus list does not rebuild choi");
  }
}

QuantumState make_state(Eigen::MatrixXcd rho) {
  QuantumState s{rho.rows(), std::move(rho)};
  validate_state(s);
  return s;
}

Povm make_povm(std::vector<Eigen::MatrixXcd> effects) {
  if (effects.empty()) throw Error("make_povm: no effects");
  Povm p{effects.front().rows(), std::move(effects)};
  validate_povm(p);
  return p;
}

QuantumChannel channel_from_choi(Eigen::MatrixXcd choi) {
  const auto side = choi.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(side))));
  if (d * d != side)
    throw DimensionMismatchError("channel_from_choi: side is not a perfect square");
  QuantumChannel c{d, std::move(choi), {}};
  validate_channel(c);
  return c;
}

Eigen::MatrixXcd max_ent_projector(Eigen::Index d) {
  if (d < 2) throw DimensionMismatchError("max_ent_projector: d must be >= 2");
  const Eigen::VectorXcd v = me_vec(Eigen::MatrixXcd::Identity(d, d));
  return (v * v.adjoint()) / double(d);
}

QuantumChannel choi_from_kraus(const std::vector<Eigen::MatrixXcd>& kraus,
                               Eigen::Index d) {
  if (kraus.empty()) throw Error("choi_from_kraus: empty kraus list");
  Eigen::MatrixXcd closure = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& a : kraus) {
    check_square_finite(a, d, "kraus operator");
    closure += a.adjoint() * a;
    const Eigen::VectorXcd v = me_vec(a);
    choi += v * v.adjoint();
  }
  if (max_abs(closure - Eigen::MatrixXcd::Identity(d, d)) > 1e-9)
    throw NotTracePreservingError("choi_from_kraus: sum A^dag A is not I");
  QuantumChannel c{d, choi / double(d), kraus};
  return c;
}

std::vector<Eigen::MatrixXcd> kraus_from_choi(const QuantumChannel& ch,
                                              double threshold) {
  const EigenDecomposition eig = herm_eig(ch.choi, 1e-9);
  if (eig.values(0) < -1e-9)
    throw InvalidChoiError("kraus_from_choi: choi is not PSD");
  std::vector<Eigen::MatrixXcd> kraus;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
    const double lam = double(ch.dim) * eig.values(i);
    if (lam <= threshold) break;
    kraus.push_back(std::sqrt(lam) * me_unvec(eig.vectors.col(i)));
  }
  return kraus;
}

QuantumChannel erasure_channel(const QuantumState& sigma) {
  validate_state(sigma);
  const Eigen::Index d = sigma.dim;
  const Eigen::MatrixXcd choi =
      kron(sigma.rho, Eigen::MatrixXcd::Identity(d, d)) / double(d);
  return QuantumChannel{d, choi, {}};
}

QuantumChannel identity_channel(Eigen::Index d) {
  return QuantumChannel{d, max_ent_projector(d),
                        {Eigen::MatrixXcd::Identity(d, d)}};
}

QuantumChannel depolarizing_channel(Eigen::Index d) {
  return erasure_channel(
      QuantumState{d, Eigen::MatrixXcd::Identity(d, d) / double(d)});
}

QuantumChannel tensor_channels(const QuantumChannel& e, const QuantumChannel& f) {
  const Eigen::Index de = e.dim, df = f.dim, d = de * df;
  const Eigen::MatrixXcd raw = kron(e.choi, f.choi);
  // Index map (B, A, B', A') -> (B, B', A, A').
  std::vector<Eigen::Index> perm(d * d);
  for (Eigen::Index ib = 0; ib < de; ++ib)
    for (Eigen::Index ia = 0; ia < de; ++ia)
      for (Eigen::Index jb = 0; jb < df; ++jb)
        for (Eigen::Index ja = 0; ja < df; ++ja) {
          const Eigen::Index src = ((ib * de + ia) * df + jb) * df + ja;
          const Eigen::Index dst = ((ib * df + jb) * de + ia) * df + ja;
          perm[static_cast<std::size_t>(src)] = dst;
        }
  Eigen::MatrixXcd choi(d * d, d * d);
  for (Eigen::Index r = 0; r < d * d; ++r)
    for (Eigen::Index c = 0; c < d * d; ++c)
      choi(perm[static_cast<std::size_t>(r)], perm[static_cast<std::size_t>(c)]) =
          raw(r, c);
  return QuantumChannel{d, choi, {}};
}

Eigen::MatrixXcd apply_channel(const QuantumChannel& ch,
                               const Eigen::MatrixXcd& rho) {
  check_square_finite(rho, ch.dim, "apply_channel input");
  const Eigen::Index d = ch.dim;
  const Eigen::MatrixXcd weighted =
      ch.choi * kron(Eigen::MatrixXcd::Identity(d, d), rho.transpose());
  return double(d) * partial_trace(weighted, d, d, 2);
}

std::vector<Eigen::MatrixXcd> weyl_unitaries(Eigen::Index d) {
  if (d < 2) throw DimensionMismatchError("weyl_unitaries: d must be >= 2");
  Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) shift((j + 1) % d, j) = 1.0;
  Eigen::MatrixXcd phase = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    phase(j, j) = std::exp(Cplx(0.0, 2.0 * std::numbers::pi * double(j) / double(d)));
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(static_cast<std::size_t>(d * d));
  Eigen::MatrixXcd wq = Eigen::MatrixXcd::Identity(d, d);
  for (Eigen::Index q = 0; q < d; ++q) {
    Eigen::MatrixXcd zp = wq;
    for (Eigen::Index p = 0; p < d; ++p) {
      out.push_back(zp);
      zp = shift * zp;
    }
    wq = phase * wq;
  }
  return out;
}

Eigen::MatrixXcd magic_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  const Cplx i(0.0, 1.0);
  Eigen::MatrixXcd w(4, 4);
  w << 0, 0, s, i * s,
      -s, i * s, 0, 0,
       s, i * s, 0, 0,
       0, 0, s, -i * s;
  return w;
}

Eigen::MatrixXcd random_unitary(Eigen::Index d, RandomSource& rng) {
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = rng.gaussian_complex();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const Cplx rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0) ? rjj / mag : Cplx(1.0, 0.0);
  }
  return q;
}

QuantumChannel random_channel(Eigen::Index d, Eigen::Index rank,
                              RandomSource& rng) {
  if (rank < 1 || rank > d * d)
    throw DimensionMismatchError("random_channel: rank must be in [1, d^2]");
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::MatrixXcd g(d * d, rank);
    for (Eigen::Index r = 0; r < d * d; ++r)
      for (Eigen::Index c = 0; c < rank; ++c) g(r, c) = rng.gaussian_complex();
    const Eigen::MatrixXcd k = g * g.adjoint();
    const Eigen::MatrixXcd marginal = partial_trace(k, d, d, 1);
    const EigenDecomposition eig = herm_eig(marginal);
    if (eig.values(0) <= 1e-12 * eig.values(eig.values.size() - 1)) continue;
    const Eigen::MatrixXcd inv_sqrt =
        eig.vectors *
        eig.values.cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<Cplx>() *
        eig.vectors.adjoint();
    const Eigen::MatrixXcd norm =
        kron(Eigen::MatrixXcd::Identity(d, d), inv_sqrt);
    return QuantumChannel{d, (norm * k * norm.adjoint()) / double(d), {}};
  }
  throw SingularMarginalError("random_channel: marginal stayed singular");
}

QuantumState random_state(Eigen::Index d, RandomSource& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) g(r, c) = rng.gaussian_complex();
    Eigen::MatrixXcd rho = g * g.adjoint();
    const double tr = rho.trace().real();
    if (tr <= 0) continue;
    return QuantumState{d, rho / tr};
  }
  throw SingularNormalizerError("random_state: zero-trace draw repeated");
}

Eigen::VectorXcd random_pure(Eigen::Index d, RandomSource& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXcd v(d);
    for (Eigen::Index j = 0; j < d; ++j) v(j) = rng.gaussian_complex();
    const double n = v.norm();
    if (n > 0) return v / n;
  }
  throw SingularNormalizerError("random_pure: zero draw repeated");
}

Povm random_povm(Eigen::Index d, int outcomes, RandomSource& rng) {
  if (outcomes < 2) throw Error("random_povm: need at least 2 outcomes");
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Eigen::MatrixXcd> parts;
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < outcomes; ++j) {
      Eigen::MatrixXcd g(d, d);
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) g(r, c) = rng.gaussian_complex();
      parts.push_back(g * g.adjoint());
      total += parts.back();
    }
    const EigenDecomposition eig = herm_eig(total);
    if (eig.values(0) <= 1e-12 * eig.values(eig.values.size() - 1)) continue;
    const Eigen::MatrixXcd inv_sqrt =
        eig.vectors *
        eig.values.cwiseSqrt().cwiseInverse().asDiagonal().toDenseMatrix().cast<Cplx>() *
        eig.vectors.adjoint();
    Povm p{d, {}};
    for (auto& part : parts) p.effects.push_back(inv_sqrt * part * inv_sqrt);
    return p;
  }
  throw SingularNormalizerError("random_povm: normalizer stayed singular");
}

}  // namespace qbnd
