#include "qbnd/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "qbnd/io_json.hpp"

namespace qbnd {

namespace {

double tol_of(const ExperimentSpec& spec, const std::string& key, double dflt) {
  const auto it = spec.tolerances.find(key);
  return it == spec.tolerances.end() ? dflt : it->second;
}

void note_failure(ExperimentResult& r, const std::string& msg) {
  r.failures.push_back(msg);
}

/// Rejection-samples a full-rank channel whose Choi matrix stays clear of
/// the boundary, so the inverse is well conditioned.
QuantumChannel random_interior_channel(Eigen::Index d, RandomSource& rng,
                                       double min_eig = 1e-6) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    QuantumChannel ch = random_channel(d, d * d, rng);
    if (herm_eig(ch.choi, 1e-9).values(0) > min_eig) return ch;
  }
  throw Error("random_interior_channel: rejection budget exhausted");
}

QuantumState diag_state(std::initializer_list<double> probs) {
  const auto d = static_cast<Eigen::Index>(probs.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  Eigen::Index i = 0;
  for (double p : probs) rho(i, i) = p, ++i;
  return QuantumState{d, rho};
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return trace_norm(a - b);
}

/// Frobenius distance from v to the nearest product unitary (up to a
/// global phase), by alternating polar projections on the two factors.
double product_unitary_distance(const Eigen::MatrixXcd& v, Eigen::Index de,
                                Eigen::Index df, RandomSource& rng) {
  const Eigen::Index d = de * df;
  double best = 0.0;
  for (int start = 0; start < 4; ++start) {
    Eigen::MatrixXcd bf = (start == 0) ? Eigen::MatrixXcd::Identity(df, df)
                                       : random_unitary(df, rng);
    Eigen::MatrixXcd af = Eigen::MatrixXcd::Identity(de, de);
    double overlap = 0.0;
    for (int round = 0; round < 40; ++round) {
      Eigen::MatrixXcd ma = Eigen::MatrixXcd::Zero(de, de);
      for (Eigen::Index i = 0; i < de; ++i)
        for (Eigen::Index j = 0; j < de; ++j)
          for (Eigen::Index k = 0; k < df; ++k)
            for (Eigen::Index l = 0; l < df; ++l)
              ma(i, j) += v(i * df + k, j * df + l) * std::conj(bf(k, l));
      af = polar_unitary(ma);
      Eigen::MatrixXcd mb = Eigen::MatrixXcd::Zero(df, df);
      for (Eigen::Index k = 0; k < df; ++k)
        for (Eigen::Index l = 0; l < df; ++l)
          for (Eigen::Index i = 0; i < de; ++i)
            for (Eigen::Index j = 0; j < de; ++j)
              mb(k, l) += v(i * df + k, j * df + l) * std::conj(af(i, j));
      bf = polar_unitary(mb);
      const double next = std::abs((kron(af, bf).adjoint() * v).trace());
      if (next - overlap <= 1e-12 * std::max(1.0, next)) {
        overlap = next;
        break;
      }
      overlap = next;
    }
    best = std::max(best, overlap);
  }
  return std::sqrt(std::max(0.0, 2.0 * double(d) - 2.0 * best));
}

}  // namespace

ExperimentResult exp_qubit_crosscheck(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.name = "crosscheck";
  res.columns = {"sample", "b_iterative", "b_magic", "gap"};
  const double max_gap_tol = tol_of(spec, "max_gap", 1e-6);
  const double fixture_tol = tol_of(spec, "fixture_gap", 1e-9);
  double max_gap = 0.0, sum_gap = 0.0;
  const RandomSource root(spec.seed);
  for (int i = 0; i < spec.samples; ++i) {
    RandomSource draw = root.child(2 * i);
    const QuantumChannel f = random_interior_channel(2, draw);
    OptimizerConfig cfg;
    cfg.seed = root.child(2 * i + 1).seed();
    const BoundarinessReport it = b_channel(f, cfg);
    const BoundarinessReport mb = b_channel_qubit(f);
    const double gap = std::abs(it.b - mb.b);
    max_gap = std::max(max_gap, gap);
    sum_gap += gap;
    res.rows.push_back({double(i), it.b, mb.b, gap});
    res.reports.push_back(it);
    res.reports.push_back(mb);
  }
  if (max_gap > max_gap_tol)
    note_failure(res, "iterative/magic gap " + format_double(max_gap));

  double fixture_max = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double p = 0.1 * k;
    const QuantumChannel f = erasure_channel(diag_state({p, 1.0 - p}));
    const double closed = p * (1.0 - p);
    const BoundarinessReport it = b_channel(f);
    const BoundarinessReport mb = b_channel_qubit(f);
    fixture_max = std::max({fixture_max, std::abs(it.b - closed),
                            std::abs(mb.b - closed)});
    res.reports.push_back(it);
    res.reports.push_back(mb);
  }
  const QuantumChannel depol = depolarizing_channel(2);
  const BoundarinessReport dit = b_channel(depol);
  const BoundarinessReport dmb = b_channel_qubit(depol);
  fixture_max = std::max(
      {fixture_max, std::abs(dit.b - 0.25), std::abs(dmb.b - 0.25)});
  res.reports.push_back(dit);
  res.reports.push_back(dmb);
  if (fixture_max > fixture_tol)
    note_failure(res, "fixture gap " + format_double(fixture_max));

  res.statistics["max_gap"] = max_gap;
  res.statistics["mean_gap"] = spec.samples ? sum_gap / spec.samples : 0.0;
  res.statistics["fixture_max_gap"] = fixture_max;
  res.pass = res.failures.empty();
  return res;
}

ExperimentResult exp_submultiplicativity(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.name = "submult";
  res.columns = {"sample",  "b_e",  "b_f",          "b_tensor",
                 "product", "gap",  "product_dist"};
  const double viol_tol = tol_of(spec, "violation", 1e-6);
  int violations = 0;
  double gap_min = std::numeric_limits<double>::infinity();
  double gap_max = -gap_min, gap_sum = 0.0;
  const RandomSource root(spec.seed);
  for (int i = 0; i < spec.samples; ++i) {
    RandomSource de = root.child(4 * i);
    RandomSource df = root.child(4 * i + 1);
    const QuantumChannel e = random_interior_channel(2, de);
    const QuantumChannel f = random_interior_channel(2, df);
    const BoundarinessReport re = b_channel_qubit(e);
    const BoundarinessReport rf = b_channel_qubit(f);
    const QuantumChannel t = tensor_channels(e, f);
    OptimizerConfig cfg;
    cfg.restarts = 32;
    cfg.seed = root.child(4 * i + 2).seed();
    cfg.extra_seeds = {kron(re.optimizer_unitary, rf.optimizer_unitary)};
    const BoundarinessReport rt = b_channel(t, cfg);
    const double product = re.b * rf.b;
    const double gap = product - rt.b;
    if (rt.b > product + viol_tol) {
      ++violations;
      note_failure(res, "sample " + std::to_string(i) + " violates by " +
                            format_double(rt.b - product));
    }
    gap_min = std::min(gap_min, gap);
    gap_max = std::max(gap_max, gap);
    gap_sum += gap;
    RandomSource diag = root.child(4 * i + 3);
    const double pdist = product_unitary_distance(rt.optimizer_unitary, 2, 2, diag);
    res.rows.push_back({double(i), re.b, rf.b, rt.b, product, gap, pdist});
    res.reports.push_back(re);
    res.reports.push_back(rf);
    res.reports.push_back(rt);
  }
  // Fixture: tensor of depolarizing channels is the d = 4 erasure onto
  // I/4, so b = 1/16 with equality in the product bound.
  {
    const QuantumChannel depol = depolarizing_channel(2);
    const QuantumChannel t = tensor_channels(depol, depol);
    OptimizerConfig cfg;
    cfg.restarts = 32;
    cfg.seed = RandomSource(spec.seed).child(999).seed();
    const BoundarinessReport rt = b_channel(t, cfg);
    res.reports.push_back(rt);
    if (std::abs(rt.b - 1.0 / 16.0) > tol_of(spec, "fixture", 1e-9))
      note_failure(res, "depolarizing tensor fixture: b = " + format_double(rt.b));
  }
  res.statistics["violations"] = violations;
  res.statistics["gap_min"] = gap_min;
  res.statistics["gap_max"] = gap_max;
  res.statistics["gap_mean"] = spec.samples ? gap_sum / spec.samples : 0.0;
  res.pass = res.failures.empty();
  return res;
}

ExperimentResult exp_product_depolarizing(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.name = "product";
  res.columns = {"sample", "b_e", "b_tensor", "expected", "error"};
  const int d_f = spec.dims.empty() ? 2 : spec.dims.front();
  if (d_f != 2 && d_f != 3) throw Error("product: erasure factor dim must be 2 or 3");
  const double err_tol = tol_of(spec, "error", 1e-5);
  const QuantumChannel f = depolarizing_channel(d_f);
  double max_err = 0.0;
  const RandomSource root(spec.seed);
  for (int i = 0; i < spec.samples; ++i) {
    RandomSource draw = root.child(2 * i);
    const QuantumChannel e = random_interior_channel(2, draw);
    const BoundarinessReport re = b_channel_qubit(e);
    const QuantumChannel t = tensor_channels(e, f);
    OptimizerConfig cfg;
    cfg.restarts = std::max(32, static_cast<int>(4 * d_f * d_f) + 8);
    cfg.seed = root.child(2 * i + 1).seed();
    cfg.extra_seeds = {
        kron(re.optimizer_unitary, Eigen::MatrixXcd::Identity(d_f, d_f))};
    const BoundarinessReport rt = b_channel(t, cfg);
    const double expected = re.b / double(d_f * d_f);
    const double err = std::abs(rt.b - expected);
    max_err = std::max(max_err, err);
    if (err > err_tol)
      note_failure(res, "sample " + std::to_string(i) + " error " +
                            format_double(err));
    res.rows.push_back({double(i), re.b, rt.b, expected, err});
    res.reports.push_back(re);
    res.reports.push_back(rt);
  }
  // Fixtures: a near-identity interior channel and the depolarizing one.
  {
    Eigen::MatrixXcd mix = 0.99 * identity_channel(2).choi +
                           0.01 * depolarizing_channel(2).choi;
    const QuantumChannel e{2, mix, {}};
    const BoundarinessReport re = b_channel_qubit(e);
    const QuantumChannel t = tensor_channels(e, f);
    OptimizerConfig cfg;
    cfg.restarts = 32;
    cfg.seed = RandomSource(spec.seed).child(998).seed();
    cfg.extra_seeds = {
        kron(re.optimizer_unitary, Eigen::MatrixXcd::Identity(d_f, d_f))};
    const BoundarinessReport rt = b_channel(t, cfg);
    res.reports.push_back(rt);
    if (std::abs(rt.b - re.b / double(d_f * d_f)) > err_tol)
      note_failure(res, "near-identity fixture error " +
                            format_double(std::abs(rt.b - re.b / double(d_f * d_f))));
  }
  res.statistics["max_error"] = max_err;
  res.pass = res.failures.empty();
  return res;
}

ExperimentResult exp_max_boundariness(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.name = "maxb";
  res.columns = {"kind", "param", "sample", "b", "bound", "margin"};
  const double eig_tol = tol_of(spec, "bound", 1e-9);
  const double channel_tol = tol_of(spec, "channel_bound", 1e-6);
  const RandomSource root(spec.seed);
  std::uint64_t task = 0;

  for (int d : {2, 3}) {
    for (int i = 0; i < spec.samples; ++i) {
      RandomSource rng = root.child(task++);
      const double b = b_state(random_state(d, rng)).b;
      const double bound = 1.0 / d;
      res.rows.push_back({0.0, double(d), double(i), b, bound, bound - b});
      if (b > bound + eig_tol)
        note_failure(res, "state bound violated at d=" + std::to_string(d));
    }
    const QuantumState mixed{
        d, Eigen::MatrixXcd::Identity(d, d) / double(d)};
    if (std::abs(b_state(mixed).b - 1.0 / d) > tol_of(spec, "fixture_eig", 1e-12))
      note_failure(res, "maximally mixed fixture at d=" + std::to_string(d));
  }

  for (int n : {2, 3}) {
    for (int i = 0; i < spec.samples; ++i) {
      RandomSource rng = root.child(task++);
      const double b = b_povm(random_povm(2, n, rng)).b;
      const double bound = 1.0 / n;
      res.rows.push_back({1.0, double(n), double(i), b, bound, bound - b});
      if (b > bound + eig_tol)
        note_failure(res, "povm bound violated at n=" + std::to_string(n));
    }
    std::vector<Eigen::MatrixXcd> uniform(
        n, Eigen::MatrixXcd::Identity(2, 2) / double(n));
    if (std::abs(b_povm(Povm{2, uniform}).b - 1.0 / n) > tol_of(spec, "fixture_eig", 1e-12))
      note_failure(res, "uniform trivial fixture at n=" + std::to_string(n));
  }

  for (int i = 0; i < spec.samples; ++i) {
    RandomSource rng = root.child(task++);
    const QuantumChannel ch = random_interior_channel(2, rng);
    const BoundarinessReport rep = b_channel_qubit(ch);
    res.rows.push_back({2.0, 2.0, double(i), rep.b, 0.25, 0.25 - rep.b});
    res.reports.push_back(rep);
    if (rep.b > 0.25 + channel_tol)
      note_failure(res, "channel bound violated at sample " + std::to_string(i));
  }
  {
    const BoundarinessReport rep = b_channel_qubit(depolarizing_channel(2));
    res.reports.push_back(rep);
    if (std::abs(rep.b - 0.25) > tol_of(spec, "fixture", 1e-9))
      note_failure(res, "depolarizing fixture: b = " + format_double(rep.b));
    // A perturbed depolarizing channel must fall strictly below 1/d^2.
    RandomSource rng = root.child(task++);
    const QuantumChannel noise = random_interior_channel(2, rng);
    Eigen::MatrixXcd mix = 0.99 * depolarizing_channel(2).choi + 0.01 * noise.choi;
    const BoundarinessReport pert = b_channel_qubit(QuantumChannel{2, mix, {}});
    res.reports.push_back(pert);
    res.statistics["perturbed_depolarizing_b"] = pert.b;
    if (!(pert.b < 0.25))
      note_failure(res, "perturbed depolarizing did not drop below 1/4");
  }
  res.pass = res.failures.empty();
  return res;
}

ExperimentResult exp_state_tightness(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.name = "tightness";
  res.columns = {"sample", "d", "lambda_min", "closed_form", "witness_dist",
                 "scan_max"};
  const double agree_tol = tol_of(spec, "agreement", 1e-9);
  const int scan_points = 1000;
  const RandomSource root(spec.seed);
  double worst_agree = 0.0;
  for (int i = 0; i < spec.samples; ++i) {
    RandomSource rng = root.child(i);
    const int d = (i % 2 == 0) ? 2 : 3;
    const QuantumState rho = random_state(d, rng);
    const EigenDecomposition eig = herm_eig(rho.rho);
    const double lmin = eig.values(0);
    const double closed = 2.0 * (1.0 - lmin);
    const Eigen::VectorXcd wit = eig.vectors.col(0);
    const double wdist = trace_distance(rho.rho, wit * wit.adjoint());
    double scan_max = 0.0;
    for (int k = 0; k < scan_points; ++k) {
      const Eigen::VectorXcd phi = random_pure(d, rng);
      scan_max = std::max(scan_max,
                          trace_distance(rho.rho, phi * phi.adjoint()));
    }
    worst_agree = std::max(worst_agree, std::abs(wdist - closed));
    if (std::abs(wdist - closed) > agree_tol)
      note_failure(res, "witness distance mismatch at sample " + std::to_string(i));
    if (scan_max > closed + agree_tol)
      note_failure(res, "scan exceeded the closed form at sample " + std::to_string(i));
    res.rows.push_back({double(i), double(d), lmin, closed, wdist, scan_max});
  }
  res.statistics["max_agreement_error"] = worst_agree;
  res.pass = res.failures.empty();
  return res;
}

namespace {

// A point of R = { |y> : tr_1 |y><y| <= I/2 } in Schmidt form:
// y = sum_j sqrt(mu_j) (Ue e_j) (x) (Uf e_j), mu_j <= 1/2.
struct RPoint {
  Eigen::MatrixXcd ue, uf;
  Eigen::Vector2d mu;
};

Eigen::VectorXcd r_point_vector(const RPoint& p) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(4);
  for (int j = 0; j < 2; ++j)
    y += std::sqrt(p.mu(j)) * kron(p.ue.col(j), p.uf.col(j)).col(0);
  return y;
}

double r_point_value(const Eigen::MatrixXcd& dmat, const RPoint& p) {
  const Eigen::VectorXcd y = r_point_vector(p);
  return y.dot(dmat * y).real();
}

Eigen::MatrixXcd unitary_step(const Eigen::MatrixXcd& u, double step,
                              RandomSource& rng) {
  Eigen::MatrixXcd g(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = rng.gaussian_complex();
  return polar_unitary(u + step * g);
}

// Given fixed Schmidt bases, the value is s^T Q s over the box
// 0 <= s_j <= 1/sqrt(2); a sign flip of one basis vector makes the
// off-diagonal coupling nonnegative, after which the full corner
// mu = (1/2, 1/2) dominates. This mirrors the strict-improvement step of
// the sub-normalized case.
double polish_mu(const Eigen::MatrixXcd& dmat, RPoint& p) {
  Eigen::Matrix2d q;
  std::vector<Eigen::VectorXcd> g(2);
  for (int j = 0; j < 2; ++j)
    g[j] = kron(p.ue.col(j), p.uf.col(j)).col(0);
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) q(j, l) = g[j].dot(dmat * g[l]).real();
  if (q(0, 1) < 0) {
    p.ue.col(1) *= -1.0;
    q(0, 1) = -q(0, 1);
    q(1, 0) = q(0, 1);
  }
  p.mu = Eigen::Vector2d(0.5, 0.5);
  return 0.5 * (q(0, 0) + q(1, 1)) + q(0, 1);
}

struct RSearchOutcome {
  double value = 0.0;
  double norm_defect = 0.0;
};

RSearchOutcome r_search(const Eigen::MatrixXcd& dmat, int starts,
                        RandomSource& rng) {
  RSearchOutcome best;
  double best_value = -1.0;
  for (int s = 0; s < starts; ++s) {
    RPoint p{random_unitary(2, rng), random_unitary(2, rng),
             Eigen::Vector2d(0.5 * rng.uniform(), 0.5 * rng.uniform())};
    double value = r_point_value(dmat, p);
    double step = 0.4;
    int stall = 0;
    while (step > 1e-8) {
      RPoint trial = p;
      trial.ue = unitary_step(p.ue, step, rng);
      trial.uf = unitary_step(p.uf, step, rng);
      for (int j = 0; j < 2; ++j)
        trial.mu(j) = std::clamp(p.mu(j) + step * 0.25 * rng.gaussian(), 0.0, 0.5);
      const double tv = r_point_value(dmat, trial);
      if (tv > value) {
        p = trial;
        value = tv;
        stall = 0;
      } else if (++stall >= 24) {
        step *= 0.5;
        stall = 0;
      }
    }
    value = polish_mu(dmat, p);
    if (value > best_value) {
      best_value = value;
      best.value = value;
      best.norm_defect = std::abs(p.mu.sum() - 1.0);
    }
  }
  return best;
}

}  // namespace

ExperimentResult exp_lemma_R(const ExperimentSpec& spec) {
  ExperimentResult res;
  res.name = "lemmar";
  res.columns = {"sample", "search_value", "norm_defect", "entangled_radius",
                 "gap"};
  const double norm_tol = tol_of(spec, "norm", 1e-6);
  const double value_tol = tol_of(spec, "value", 1e-6);
  const RandomSource root(spec.seed);
  for (int i = 0; i < spec.samples; ++i) {
    RandomSource rng = root.child(i);
    Eigen::MatrixXcd dmat;
    if (i % 2 == 0) {
      Eigen::MatrixXcd g(4, 4);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = rng.gaussian_complex();
      dmat = g * g.adjoint();
    } else {
      const QuantumChannel ch = random_interior_channel(2, rng);
      const EigenDecomposition eig = herm_eig(ch.choi, 1e-9);
      dmat = eig.vectors *
             eig.values.cwiseInverse().asDiagonal().toDenseMatrix().cast<Cplx>() *
             eig.vectors.adjoint();
    }
    const double scale = herm_eig(dmat, 1e-9).values(3);
    OptimizerConfig cfg;
    cfg.seed = root.child(1000 + i).seed();
    const EntangledRadius er = entangled_radius_iterative(dmat, cfg);
    RandomSource srng = root.child(2000 + i);
    const RSearchOutcome found = r_search(dmat, 100, srng);
    const double gap = er.value - found.value;
    if (found.norm_defect > norm_tol)
      note_failure(res, "best point not normalized at sample " + std::to_string(i));
    if (found.value > er.value + value_tol * scale)
      note_failure(res, "search exceeded the entangled radius at sample " +
                            std::to_string(i));

    // The sub-normalized start mu = (0.3, 0.3) must improve strictly.
    RandomSource frng = root.child(3000 + i);
    RPoint p{random_unitary(2, frng), random_unitary(2, frng),
             Eigen::Vector2d(0.3, 0.3)};
    const double before = r_point_value(dmat, p);
    const double after = polish_mu(dmat, p);
    if (!(after > before))
      note_failure(res, "sub-normalized start not improved at sample " +
                            std::to_string(i));
    res.rows.push_back({double(i), found.value, found.norm_defect, er.value, gap});
  }
  res.pass = res.failures.empty();
  return res;
}

ExperimentResult exp_polytope_maps(const ExperimentSpec& spec) {
  if (spec.resolution < 10) throw Error("polytope: resolution must be >= 10");
  ExperimentResult res;
  res.name = "polytope";
  res.columns = {"shape", "x", "y", "b", "m"};
  const int r = spec.resolution;
  const auto v2 = [](double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return v;
  };
  const PolytopeBase triangle =
      PolytopeBase::lifted({v2(0, 0), v2(1, 0), v2(0, 1)});
  const PolytopeBase square =
      PolytopeBase::lifted({v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)});

  double tri_max_b = 0.0, sq_max_b = 0.0, min_slack = 1.0;
  double vertex_max = 0.0;
  const auto emit = [&](const PolytopeBase& base, double shape, double x,
                        double y) {
    const BasePoint p = lift_point(v2(x, y));
    double wmin = 1.0, wmax = 0.0;
    for (Eigen::Index j = 0; j < base.num_vertices(); ++j) {
      const double w = weight_t(base, p, base.vertex(j));
      wmin = std::min(wmin, w);
      wmax = std::max(wmax, w);
    }
    const double b = wmin, m = 1.0 - wmax;
    res.rows.push_back({shape, x, y, b, m});
    min_slack = std::min(min_slack, m - b);
    (shape == 0.0 ? tri_max_b : sq_max_b) =
        std::max(shape == 0.0 ? tri_max_b : sq_max_b, b);
    return std::pair<double, double>{b, m};
  };

  for (int a = 0; a <= r; ++a)
    for (int bb = 0; bb <= r - a; ++bb) {
      const auto [b, m] = emit(triangle, 0.0, double(bb) / r,
                               double(r - a - bb) / r);
      if ((a == r) || (bb == r) || (a == 0 && bb == 0)) {
        vertex_max = std::max({vertex_max, b, m});
      }
    }
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j) {
      const auto [b, m] = emit(square, 1.0, double(i) / r, double(j) / r);
      if ((i == 0 || i == r) && (j == 0 || j == r))
        vertex_max = std::max({vertex_max, b, m});
    }

  const double grid_err = 2.0 / r;
  if (min_slack < -1e-10) note_failure(res, "b > m on the grid");
  if (tri_max_b < 1.0 / 3.0 - grid_err || tri_max_b > 1.0 / 3.0 + 1e-9)
    note_failure(res, "triangle max b = " + format_double(tri_max_b));
  if (sq_max_b < 0.5 - grid_err || sq_max_b > 0.5 + 1e-9)
    note_failure(res, "square max b = " + format_double(sq_max_b));
  if (vertex_max > 1e-10)
    note_failure(res, "vertices should have b = m = 0");
  res.statistics["triangle_max_b"] = tri_max_b;
  res.statistics["square_max_b"] = sq_max_b;
  res.statistics["min_m_minus_b"] = min_slack;
  res.pass = res.failures.empty();
  return res;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "crosscheck", "submult", "product", "maxb",
      "tightness",  "lemmar",  "polytope"};
  return names;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.samples < 1) throw Error("experiment: samples must be >= 1");
  ExperimentResult res;
  if (spec.name == "crosscheck") res = exp_qubit_crosscheck(spec);
  else if (spec.name == "submult") res = exp_submultiplicativity(spec);
  else if (spec.name == "product") res = exp_product_depolarizing(spec);
  else if (spec.name == "maxb") res = exp_max_boundariness(spec);
  else if (spec.name == "tightness") res = exp_state_tightness(spec);
  else if (spec.name == "lemmar") res = exp_lemma_R(spec);
  else if (spec.name == "polytope") res = exp_polytope_maps(spec);
  else throw Error("unknown experiment \"" + spec.name + "\"");
  if (!spec.output_path.empty()) write_csv(res, spec.output_path);
  return res;
}

void write_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (std::size_t i = 0; i < result.columns.size(); ++i)
    out << (i ? "," : "") << result.columns[i];
  out << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

}  // namespace qbnd
