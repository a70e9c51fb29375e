#include "qbnd/boundariness.hpp"

#include <algorithm>
#include <cmath>

namespace qbnd {

namespace {

constexpr double kInteriorTol = 1e-10;

Eigen::MatrixXcd hermitian_inverse(const EigenDecomposition& eig) {
  return eig.vectors *
         eig.values.cwiseInverse().asDiagonal().toDenseMatrix().cast<Cplx>() *
         eig.vectors.adjoint();
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m, double tol = 1e-9) {
  const EigenDecomposition eig = herm_eig(m, tol);
  if (eig.values(0) < -tol * std::max(1.0, eig.values.cwiseAbs().maxCoeff()))
    throw NotPsdError("psd_sqrt: negative eigenvalue");
  const Eigen::VectorXd clamped = eig.values.cwiseMax(0.0);
  return eig.vectors *
         clamped.cwiseSqrt().asDiagonal().toDenseMatrix().cast<Cplx>() *
         eig.vectors.adjoint();
}

EigenDecomposition interior_choi_eig(const QuantumChannel& f) {
  EigenDecomposition eig = herm_eig(f.choi, 1e-9);
  if (eig.values(0) <= kInteriorTol)
    throw NotInteriorError("channel is not interior: smallest Choi eigenvalue " +
                           std::to_string(eig.values(0)));
  return eig;
}

struct Restart {
  double objective = -1.0;
  Eigen::MatrixXcd unitary;
  std::vector<double> history;
  int iterations = 0;
  bool converged = false;
};

Restart ascend(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& u0,
               int max_iters, double rel_tol) {
  Restart r;
  r.unitary = u0;
  Eigen::VectorXcd x = me_vec(r.unitary);
  Eigen::VectorXcd ax = a * x;
  double f = x.dot(ax).real();
  r.history.push_back(f);
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::MatrixXcd next = polar_unitary(me_unvec(ax));
    x = me_vec(next);
    ax = a * x;
    const double fn = x.dot(ax).real();
    if (fn < f) {
      // Ascent is monotone for PSD a; a decrease means float precision is
      // exhausted. Stop without recording the dip.
      r.converged = true;
      break;
    }
    r.unitary = next;
    r.history.push_back(fn);
    ++r.iterations;
    if (fn - f <= rel_tol * std::max(std::abs(fn), 1e-300)) {
      r.converged = true;
      f = fn;
      break;
    }
    f = fn;
  }
  r.objective = f;
  return r;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::magic_basis: return "magic_basis";
    case Method::iterative: return "iterative";
  }
  return "unknown";
}

BoundarinessReport b_state(const QuantumState& rho) {
  validate_state(rho);
  if (rho.dim < 2)
    throw DimensionMismatchError("b_state: need dim >= 2");
  const EigenDecomposition eig = herm_eig(rho.rho);
  BoundarinessReport rep;
  rep.method = Method::closed_form;
  rep.b = std::max(0.0, eig.values(0));
  rep.optimizer_vector = eig.vectors.col(0);
  const Eigen::MatrixXcd pure =
      rep.optimizer_vector * rep.optimizer_vector.adjoint();
  const Eigen::MatrixXcd g = (rho.rho - rep.b * pure) / (1.0 - rep.b);
  rep.complement = {g};
  rep.objective_history = {rep.b};
  const EigenDecomposition eg = herm_eig(g);
  rep.residuals["complement_min_eig"] = eg.values(0);
  rep.residuals["reconstruction"] =
      max_abs(rho.rho - (rep.b * pure + (1.0 - rep.b) * g));
  return rep;
}

BoundarinessReport b_povm(const Povm& m) {
  validate_povm(m);
  if (m.effects.size() < 2)
    throw Error("b_povm: need at least 2 outcomes");
  BoundarinessReport rep;
  rep.method = Method::closed_form;
  double best = 0.0;
  int best_idx = -1;
  for (std::size_t j = 0; j < m.effects.size(); ++j) {
    const double lam = herm_eig(m.effects[j]).values(0);
    if (best_idx < 0 || lam < best) {
      best = lam;
      best_idx = static_cast<int>(j);
    }
  }
  rep.b = std::max(0.0, best);
  rep.optimizer_index = best_idx;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m.dim, m.dim);
  double complement_min = 1.0;
  double reconstruction = 0.0;
  for (std::size_t j = 0; j < m.effects.size(); ++j) {
    const Eigen::MatrixXcd concentrated =
        (static_cast<int>(j) == best_idx) ? id : Eigen::MatrixXcd::Zero(m.dim, m.dim).eval();
    const Eigen::MatrixXcd g = (m.effects[j] - rep.b * concentrated) / (1.0 - rep.b);
    rep.complement.push_back(g);
    complement_min = std::min(complement_min, herm_eig(g).values(0));
    reconstruction = std::max(
        reconstruction,
        max_abs(m.effects[j] - (rep.b * concentrated + (1.0 - rep.b) * g)));
  }
  rep.objective_history = {rep.b};
  rep.residuals["complement_min_eig"] = complement_min;
  rep.residuals["reconstruction"] = reconstruction;
  return rep;
}

double weight_t_channel(const QuantumChannel& f, const QuantumChannel& e) {
  if (f.dim != e.dim)
    throw DimensionMismatchError("weight_t_channel: dimension mismatch");
  const EigenDecomposition eig_f = interior_choi_eig(f);
  const Eigen::MatrixXcd f_inv = hermitian_inverse(eig_f);
  const Eigen::MatrixXcd root_e = psd_sqrt(e.choi);
  // Symmetric form sqrt(J_E) J_F^{-1} sqrt(J_E): similar to J_F^{-1} J_E
  // but keeps the eigenproblem Hermitian.
  const Eigen::MatrixXcd x = root_e * f_inv * root_e;
  const EigenDecomposition eig_x = herm_eig(x, 1e-8);
  const double lam1 = eig_x.values(eig_x.values.size() - 1);
  return std::min(1.0, 1.0 / lam1);
}

EntangledRadius entangled_radius_iterative(const Eigen::MatrixXcd& a,
                                           const OptimizerConfig& cfg) {
  if (cfg.rel_tol <= 0 || cfg.restarts < 1 || cfg.max_iters < 1)
    throw Error("entangled_radius: invalid optimizer config");
  const Eigen::Index side = a.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(side))));
  if (d * d != side || d < 2)
    throw DimensionMismatchError("entangled_radius: matrix side is not d^2");
  const EigenDecomposition eig = herm_eig(a, 1e-9);
  if (eig.values(0) < -1e-10 * std::max(1.0, eig.values.cwiseAbs().maxCoeff()))
    throw NotPsdError("entangled_radius: matrix is not PSD");

  std::vector<Eigen::MatrixXcd> seeds;
  if (cfg.seed_strategy == SeedStrategy::weyl_plus_haar)
    seeds = weyl_unitaries(d);
  for (const auto& u : cfg.extra_seeds) {
    if (u.rows() != d || u.cols() != d)
      throw DimensionMismatchError("entangled_radius: extra seed has wrong size");
    seeds.push_back(u);
  }
  const int haar =
      (cfg.seed_strategy == SeedStrategy::weyl_plus_haar)
          ? std::max(8, cfg.restarts - static_cast<int>(d * d))
          : std::max(1, cfg.restarts);
  RandomSource rng(cfg.seed);
  for (int i = 0; i < haar; ++i) seeds.push_back(random_unitary(d, rng));

  Restart best;
  for (const auto& u0 : seeds) {
    Restart r = ascend(a, u0, cfg.max_iters, cfg.rel_tol);
    if (r.objective > best.objective) best = std::move(r);
  }
  EntangledRadius out;
  out.value = best.objective / double(d);
  out.unitary = best.unitary;
  out.iterations = best.iterations;
  out.restarts_used = static_cast<int>(seeds.size());
  out.converged = best.converged;
  out.history = std::move(best.history);
  return out;
}

namespace {

// Complement extraction and the named residual checks shared by every
// channel method. b and u must satisfy b = d / <<u| a |u>> for a = J_F^{-1}.
void finish_channel_report(const QuantumChannel& f, const Eigen::MatrixXcd& a,
                           const Eigen::MatrixXcd& u, BoundarinessReport& rep) {
  const Eigen::Index d = f.dim;
  const Eigen::VectorXcd uv = me_vec(u);
  const Eigen::MatrixXcd ju = (uv * uv.adjoint()) / double(d);
  const Eigen::MatrixXcd g = (f.choi - rep.b * ju) / (1.0 - rep.b);
  rep.optimizer_unitary = u;
  rep.complement = {g};
  const EigenDecomposition eg = herm_eig(g, 1e-8);
  rep.residuals["complement_min_eig"] = eg.values(0);
  rep.residuals["complement_marginal_dev"] = max_abs(
      partial_trace(g, d, d, 1) -
      Eigen::MatrixXcd::Identity(d, d) / double(d));
  rep.residuals["reconstruction"] =
      max_abs(f.choi - (rep.b * ju + (1.0 - rep.b) * g));
  rep.residuals["unitarity"] =
      max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(d, d));
  const QuantumChannel uchan{d, ju, {}};
  rep.residuals["weight_crosscheck"] = std::abs(weight_t_channel(f, uchan) - rep.b);
  rep.residuals["weyl_bound_margin"] =
      double(d * d) / a.trace().real() - rep.b;
}

}  // namespace

BoundarinessReport b_channel(const QuantumChannel& f, const OptimizerConfig& cfg) {
  validate_channel(f);
  const EigenDecomposition eig = interior_choi_eig(f);
  const Eigen::MatrixXcd a = hermitian_inverse(eig);
  const EntangledRadius er = entangled_radius_iterative(a, cfg);
  BoundarinessReport rep;
  rep.method = Method::iterative;
  rep.b = 1.0 / er.value;
  rep.iterations = er.iterations;
  rep.restarts_used = er.restarts_used;
  rep.converged = er.converged;
  rep.objective_history = er.history;
  finish_channel_report(f, a, er.unitary, rep);
  return rep;
}

BoundarinessReport b_channel_qubit(const QuantumChannel& f) {
  if (f.dim != 2) throw NotQubitError("b_channel_qubit: channel is not a qubit channel");
  validate_channel(f);
  const EigenDecomposition eig = interior_choi_eig(f);
  const Eigen::MatrixXcd a = hermitian_inverse(eig);
  const Eigen::MatrixXcd w = magic_basis();
  const Eigen::MatrixXcd m = w.adjoint() * a * w;
  // m is Hermitian, so m + m^T is real symmetric up to roundoff.
  Eigen::MatrixXd s = (m + m.transpose()).real();
  s = 0.5 * (s + s.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  const double lam1 = es.eigenvalues()(3);
  const Eigen::VectorXd v = es.eigenvectors().col(3);
  const Eigen::VectorXcd uv = std::sqrt(2.0) * (w * v.cast<Cplx>());
  const Eigen::MatrixXcd u = me_unvec(uv);
  if (max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(2, 2)) > 1e-8)
    throw ValidationFailedError(
        "b_channel_qubit: reconstructed optimizer is not unitary");
  BoundarinessReport rep;
  rep.method = Method::magic_basis;
  rep.b = 2.0 / lam1;
  rep.objective_history = {lam1};
  finish_channel_report(f, a, u, rep);
  return rep;
}

BoundarinessReport b_erasure(const QuantumState& sigma) {
  validate_state(sigma);
  const EigenDecomposition eig = herm_eig(sigma.rho);
  if (eig.values(0) <= kInteriorTol)
    throw NotInteriorError("b_erasure: sigma is not an interior state");
  const double b = 1.0 / eig.values.cwiseInverse().sum();
  const QuantumChannel f = erasure_channel(sigma);
  const Eigen::MatrixXcd a = hermitian_inverse(herm_eig(f.choi, 1e-9));
  BoundarinessReport rep;
  rep.method = Method::closed_form;
  rep.b = b;
  // The objective is unitary-invariant (cyclic trace), so any unitary is
  // optimal; the identity is returned.
  rep.objective_history = {double(sigma.dim) / b};
  finish_channel_report(f, a, Eigen::MatrixXcd::Identity(sigma.dim, sigma.dim),
                        rep);
  return rep;
}

bool is_boundary(const QuantumChannel& ch, double tol) {
  return herm_eig(ch.choi, 1e-9).values(0) <= tol;
}

double mixedness_state(const QuantumState& rho) {
  validate_state(rho);
  const EigenDecomposition eig = herm_eig(rho.rho);
  return 1.0 - eig.values(eig.values.size() - 1);
}

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ValidationFailedError(msg);
}

}  // namespace

Decomposition decompose(const QuantumState& y, const BoundarinessReport& r) {
  require(r.optimizer_vector.size() == y.dim,
          "decompose(state): report does not match the state");
  require(r.complement.size() == 1, "decompose(state): missing complement");
  const Eigen::MatrixXcd x = r.optimizer_vector * r.optimizer_vector.adjoint();
  const Eigen::MatrixXcd& g = r.complement.front();
  require(max_abs(y.rho - (r.b * x + (1.0 - r.b) * g)) <= 1e-9,
          "decompose(state): reconstruction residual too large");
  const EigenDecomposition eg = herm_eig(g);
  require(eg.values(0) >= -1e-9, "decompose(state): complement not PSD");
  require(eg.values(0) <= 1e-8, "decompose(state): complement not singular");
  require(std::abs(g.trace().real() - 1.0) <= 1e-9,
          "decompose(state): complement trace is not 1");
  return {r.b, {x}, {g}};
}

Decomposition decompose(const Povm& y, const BoundarinessReport& r) {
  require(r.optimizer_index >= 0 &&
              r.optimizer_index < static_cast<int>(y.effects.size()),
          "decompose(povm): bad optimizer index");
  require(r.complement.size() == y.effects.size(),
          "decompose(povm): complement arity mismatch");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(y.dim, y.dim);
  std::vector<Eigen::MatrixXcd> x;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(y.dim, y.dim);
  double gmin = 1.0;
  for (std::size_t j = 0; j < y.effects.size(); ++j) {
    x.push_back(static_cast<int>(j) == r.optimizer_index
                    ? id
                    : Eigen::MatrixXcd::Zero(y.dim, y.dim).eval());
    const Eigen::MatrixXcd& g = r.complement[j];
    require(max_abs(y.effects[j] - (r.b * x.back() + (1.0 - r.b) * g)) <= 1e-9,
            "decompose(povm): reconstruction residual too large");
    const EigenDecomposition eg = herm_eig(g);
    require(eg.values(0) >= -1e-9, "decompose(povm): complement effect not PSD");
    gmin = std::min(gmin, eg.values(0));
    sum += g;
  }
  require(max_abs(sum - id) <= 1e-9, "decompose(povm): complement is not a POVM");
  require(gmin <= 1e-8, "decompose(povm): no singular complement effect");
  return {r.b, x, r.complement};
}

Decomposition decompose(const QuantumChannel& y, const BoundarinessReport& r) {
  require(r.optimizer_unitary.rows() == y.dim,
          "decompose(channel): report does not match the channel");
  require(r.complement.size() == 1, "decompose(channel): missing complement");
  const Eigen::VectorXcd uv = me_vec(r.optimizer_unitary);
  const Eigen::MatrixXcd x = (uv * uv.adjoint()) / double(y.dim);
  const Eigen::MatrixXcd& g = r.complement.front();
  require(max_abs(y.choi - (r.b * x + (1.0 - r.b) * g)) <= 1e-9,
          "decompose(channel): reconstruction residual too large");
  const EigenDecomposition eg = herm_eig(g, 1e-8);
  require(eg.values(0) >= -1e-9, "decompose(channel): complement not PSD");
  require(eg.values(0) <= 1e-8,
          "decompose(channel): complement Choi kernel is empty");
  require(max_abs(partial_trace(g, y.dim, y.dim, 1) -
                  Eigen::MatrixXcd::Identity(y.dim, y.dim) / double(y.dim)) <=
              1e-9,
          "decompose(channel): complement is not trace preserving");
  return {r.b, {x}, {g}};
}

}  // namespace qbnd
