// Acceptance suite: runs the headline checks end to end and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qbnd/experiments.hpp"
#include "qbnd/io_json.hpp"

using namespace qbnd;

namespace {

std::vector<BoundarinessReport> g_reports;

void keep(const BoundarinessReport& rep) { g_reports.push_back(rep); }
void keep(const std::vector<BoundarinessReport>& reps) {
  g_reports.insert(g_reports.end(), reps.begin(), reps.end());
}

QuantumState diag_state(std::initializer_list<double> probs) {
  const auto d = static_cast<Eigen::Index>(probs.size());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  Eigen::Index i = 0;
  for (double p : probs) rho(i, i) = p, ++i;
  return QuantumState{d, rho};
}

QuantumState mixed_state(Eigen::Index d) {
  return QuantumState{d, Eigen::MatrixXcd::Identity(d, d) / double(d)};
}

QuantumChannel random_interior(Eigen::Index d, RandomSource& rng) {
  for (;;) {
    QuantumChannel ch = random_channel(d, d * d, rng);
    if (herm_eig(ch.choi, 1e-9).values(0) > 1e-6) return ch;
  }
}

Eigen::VectorXd v2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

struct Ctx {
  std::vector<BoundarinessReport> qubit_iterative;  // criterion 3 channels
  std::vector<BoundarinessReport> qubit_magic;
  std::vector<QuantumChannel> qubit_channels;
};

Ctx g_ctx;

bool criterion1(std::string& detail) {
  double worst_it = 0.0, worst_cf = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double p = 0.1 * k;
    const QuantumState sigma = diag_state({p, 1.0 - p});
    const double closed = p * (1.0 - p);
    const BoundarinessReport it = b_channel(erasure_channel(sigma));
    const BoundarinessReport cf = b_erasure(sigma);
    keep(it);
    keep(cf);
    worst_it = std::max(worst_it, std::abs(it.b - closed));
    worst_cf = std::max(worst_cf, std::abs(cf.b - closed));
  }
  detail = "max |b_iter - p(1-p)| = " + format_double(worst_it) +
           ", max |b_erasure - p(1-p)| = " + format_double(worst_cf);
  return worst_it <= 1e-6 && worst_cf <= 1e-12;
}

bool criterion2(std::string& detail) {
  double worst_state = 0.0, worst_povm = 0.0;
  for (Eigen::Index d : {2, 3, 4}) {
    const BoundarinessReport rep = b_state(mixed_state(d));
    keep(rep);
    worst_state = std::max(worst_state, std::abs(rep.b - 1.0 / double(d)));
  }
  for (int n : {2, 3, 4}) {
    std::vector<Eigen::MatrixXcd> uniform(
        static_cast<std::size_t>(n),
        Eigen::MatrixXcd::Identity(2, 2) / double(n));
    const BoundarinessReport rep = b_povm(Povm{2, uniform});
    keep(rep);
    worst_povm = std::max(worst_povm, std::abs(rep.b - 1.0 / n));
  }
  const BoundarinessReport d2 = b_channel(depolarizing_channel(2));
  const BoundarinessReport d3 = b_channel(depolarizing_channel(3));
  keep(d2);
  keep(d3);
  const double err2 = std::abs(d2.b - 0.25);
  const double err3 = std::abs(d3.b - 1.0 / 9.0);
  detail = "state dev " + format_double(worst_state) + ", povm dev " +
           format_double(worst_povm) + ", depol dev (d=2) " +
           format_double(err2) + ", (d=3) " + format_double(err3);
  return worst_state <= 1e-12 && worst_povm <= 1e-12 && err2 <= 1e-6 &&
         err3 <= 1e-5;
}

bool criterion3(std::string& detail) {
  const RandomSource root(424242);
  double max_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    RandomSource draw = root.child(2 * static_cast<std::uint64_t>(i));
    const QuantumChannel f = random_interior(2, draw);
    OptimizerConfig cfg;
    cfg.seed = root.child(2 * static_cast<std::uint64_t>(i) + 1).seed();
    const BoundarinessReport it = b_channel(f, cfg);
    const BoundarinessReport mb = b_channel_qubit(f);
    g_ctx.qubit_channels.push_back(f);
    g_ctx.qubit_iterative.push_back(it);
    g_ctx.qubit_magic.push_back(mb);
    keep(it);
    keep(mb);
    max_gap = std::max(max_gap, std::abs(it.b - mb.b));
  }
  detail = "max |b_channel - b_channel_qubit| = " + format_double(max_gap) +
           " over 100 channels";
  return max_gap <= 1e-6;
}

bool criterion4(std::string& detail) {
  double worst_unitarity = 0.0, worst_kernel = -1.0, worst_psd = 0.0;
  double worst_marginal = 0.0, worst_weight = 0.0;
  for (std::size_t i = 0; i < g_ctx.qubit_iterative.size(); ++i) {
    for (const auto* rep : {&g_ctx.qubit_iterative[i], &g_ctx.qubit_magic[i]}) {
      worst_unitarity = std::max(worst_unitarity, rep->residuals.at("unitarity"));
      const double lmin = rep->residuals.at("complement_min_eig");
      worst_kernel = std::max(worst_kernel, lmin);
      worst_psd = std::max(worst_psd, -lmin);
      worst_marginal =
          std::max(worst_marginal, rep->residuals.at("complement_marginal_dev"));
      worst_weight =
          std::max(worst_weight, rep->residuals.at("weight_crosscheck"));
    }
  }
  detail = "unitarity " + format_double(worst_unitarity) + ", kernel " +
           format_double(worst_kernel) + ", psd defect " +
           format_double(worst_psd) + ", marginal " +
           format_double(worst_marginal) + ", weight crosscheck " +
           format_double(worst_weight);
  return !g_ctx.qubit_iterative.empty() && worst_unitarity <= 1e-8 &&
         worst_kernel <= 1e-8 && worst_psd <= 1e-9 && worst_marginal <= 1e-9 &&
         worst_weight <= 1e-7;
}

bool criterion5(std::string& detail) {
  ExperimentSpec spec;
  spec.name = "submult";
  spec.samples = 50;
  spec.seed = 20150416;
  const ExperimentResult res = exp_submultiplicativity(spec);
  keep(res.reports);
  detail = "violations = " + format_double(res.statistics.at("violations")) +
           ", gap min/mean/max = " + format_double(res.statistics.at("gap_min")) +
           " / " + format_double(res.statistics.at("gap_mean")) + " / " +
           format_double(res.statistics.at("gap_max"));
  return res.pass;
}

bool criterion6(std::string& detail) {
  ExperimentSpec spec;
  spec.name = "product";
  spec.samples = 20;
  spec.seed = 31337;
  spec.dims = {2};
  const ExperimentResult res = exp_product_depolarizing(spec);
  keep(res.reports);
  detail = "max |b(ExF) - b(E)/4| = " + format_double(res.statistics.at("max_error")) +
           " over 20 samples";
  return res.pass && res.statistics.at("max_error") <= 1e-5;
}

bool criterion7(std::string& detail) {
  ExperimentSpec spec;
  spec.name = "tightness";
  spec.samples = 200;
  spec.seed = 271828;
  const ExperimentResult res = exp_state_tightness(spec);
  detail = "max |dist - 2(1 - lambda_min)| = " +
           format_double(res.statistics.at("max_agreement_error")) +
           " over 200 states, scans never exceeded";
  return res.pass && res.statistics.at("max_agreement_error") <= 1e-9;
}

bool criterion8(std::string& detail) {
  const PolytopeBase tri =
      PolytopeBase::lifted({v2(0, 0), v2(1, 0), v2(0, 1)});
  const PolytopeBase sq =
      PolytopeBase::lifted({v2(0, 0), v2(1, 0), v2(1, 1), v2(0, 1)});
  const BasePoint centroid = lift_point(v2(1.0 / 3, 1.0 / 3));
  const BasePoint center = lift_point(v2(0.5, 0.5));

  const double tri_b = boundariness_polytope(tri, centroid).value;
  const double tri_dist = max_base_distance(tri, centroid).value;
  const double sq_b = boundariness_polytope(sq, center).value;
  if (std::abs(tri_b - 1.0 / 3) > 1e-10 || std::abs(tri_dist - 4.0 / 3) > 1e-9 ||
      std::abs(sq_b - 0.5) > 1e-10) {
    detail = "triangle b = " + format_double(tri_b) + ", dist = " +
             format_double(tri_dist) + ", square b = " + format_double(sq_b);
    return false;
  }

  // LP primal/dual agreement on 100 random difference vectors
  RandomSource rng(161803);
  double worst_lp = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::vector<Eigen::VectorXd> pts;
    for (int j = 0; j < 5; ++j) {
      const double a = 2.0 * 3.14159265358979323846 * rng.uniform();
      pts.push_back(v2(std::cos(a), std::sin(a)));
    }
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) {
                return std::atan2(a(1), a(0)) < std::atan2(b(1), b(0));
              });
    const PolytopeBase poly = PolytopeBase::lifted(pts);
    Eigen::VectorXd w1(5), w2(5);
    for (int j = 0; j < 5; ++j) w1(j) = rng.uniform() + 1e-3;
    for (int j = 0; j < 5; ++j) w2(j) = rng.uniform() + 1e-3;
    w1 /= w1.sum();
    w2 /= w2.sum();
    const Eigen::VectorXd u = poly.vertices() * (w1 - w2);
    const BaseNormPair pair = base_norm_pair(poly, u);
    worst_lp = std::max(worst_lp, std::abs(pair.functional - pair.decomposition));
  }
  if (worst_lp > 1e-9) {
    detail = "LP primal/dual disagreement " + format_double(worst_lp);
    return false;
  }

  ExperimentSpec spec;
  spec.name = "polytope";
  spec.resolution = 50;
  const ExperimentResult maps = exp_polytope_maps(spec);
  detail = "triangle b = " + format_double(tri_b) + ", dist = " +
           format_double(tri_dist) + ", square b = " + format_double(sq_b) +
           ", LP agreement " + format_double(worst_lp) + ", grid min(m - b) = " +
           format_double(maps.statistics.at("min_m_minus_b"));
  return maps.pass && maps.statistics.at("min_m_minus_b") >= -1e-10;
}

bool criterion9(std::string& detail) {
  std::size_t histories = 0;
  for (const auto& rep : g_reports) {
    for (std::size_t i = 1; i < rep.objective_history.size(); ++i)
      if (rep.objective_history[i] < rep.objective_history[i - 1]) {
        detail = "objective history decreased";
        return false;
      }
    ++histories;
    const auto it = rep.residuals.find("weyl_bound_margin");
    if (it != rep.residuals.end() && it->second < -1e-9) {
      detail = "Weyl trace bound violated by " + format_double(-it->second);
      return false;
    }
  }
  detail = std::to_string(histories) +
           " histories non-decreasing, Weyl bound satisfied on every run";
  return histories > 0;
}

bool criterion10(std::string& detail) {
  RandomSource rng(5551212);

  // numeric kernel reconstruction
  double worst_rec = 0.0;
  for (int k = 0; k < 50; ++k) {
    Eigen::MatrixXcd g(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) g(r, c) = rng.gaussian_complex();
    const Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
    const EigenDecomposition e = herm_eig(h);
    const Eigen::MatrixXcd rebuilt =
        e.vectors * e.values.asDiagonal().toDenseMatrix().cast<Cplx>() *
        e.vectors.adjoint();
    worst_rec = std::max(worst_rec, max_abs(rebuilt - h) / h.operatorNorm());
  }
  if (worst_rec > 1e-10) {
    detail = "eigen reconstruction residual " + format_double(worst_rec);
    return false;
  }

  // Choi round trips
  double worst_choi = 0.0;
  for (int k = 0; k < 50; ++k) {
    const QuantumChannel ch = random_channel(2, 1 + k % 4, rng);
    const QuantumChannel back = choi_from_kraus(kraus_from_choi(ch), 2);
    worst_choi = std::max(worst_choi, max_abs(back.choi - ch.choi));
  }
  if (worst_choi > 1e-8) {
    detail = "choi round trip residual " + format_double(worst_choi);
    return false;
  }

  // tensor permutation validity
  double worst_tensor = 0.0;
  for (int k = 0; k < 20; ++k) {
    const QuantumChannel e = random_channel(2, 4, rng);
    const QuantumChannel f = random_channel(2, 4, rng);
    const QuantumChannel t = tensor_channels(e, f);
    validate_channel(t);
    worst_tensor = std::max(
        worst_tensor, max_abs(partial_trace(t.choi, 4, 4, 1) -
                              Eigen::MatrixXcd::Identity(4, 4) / 4.0));
    const QuantumState r1 = random_state(2, rng);
    const QuantumState r2 = random_state(2, rng);
    worst_tensor = std::max(
        worst_tensor,
        max_abs(apply_channel(t, kron(r1.rho, r2.rho)) -
                kron(apply_channel(e, r1.rho), apply_channel(f, r2.rho))));
  }
  if (worst_tensor > 1e-9) {
    detail = "tensor validity residual " + format_double(worst_tensor);
    return false;
  }

  // POVM dominance oracle
  double worst_povm = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const Povm m = random_povm(2, 3, rng);
    const double b = b_povm(m).b;
    for (int k = 0; k < 1000; ++k) {
      const Povm f = random_povm(2, 3, rng);
      worst_povm = std::max(worst_povm, b - oracles::povm_weight(m, f));
    }
  }
  if (worst_povm > 1e-9) {
    detail = "POVM dominance violated by " + format_double(worst_povm);
    return false;
  }

  detail = "reconstruction " + format_double(worst_rec) + ", choi " +
           format_double(worst_choi) + ", tensor " + format_double(worst_tensor) +
           ", povm dominance margin " + format_double(-worst_povm);
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"erasure closed form b = p(1-p)", criterion1},
      {"maximal values 1/d, 1/n, 1/d^2", criterion2},
      {"qubit iterative vs magic-basis agreement", criterion3},
      {"unitary optimality and boundary decomposition", criterion4},
      {"sub-multiplicativity over 50 channel pairs", criterion5},
      {"product case against the depolarizing factor", criterion6},
      {"state tightness max distance = 2(1 - lambda_min)", criterion7},
      {"polytope suite (triangle, square, LP duality, b <= m)", criterion8},
      {"monotone ascent histories and Weyl trace bound", criterion9},
      {"property suites (kernel, choi, tensor, povm oracle)", criterion10},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %zu: %s (%.1fs) — %s\n", ok ? "PASS" : "FAIL",
                i + 1, criteria[i].name, secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures)
    std::printf("%d of %zu criteria FAILED\n", failures, criteria.size());
  else
    std::printf("all %zu criteria passed\n", criteria.size());
  return failures;
}
