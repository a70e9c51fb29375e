#ifndef QBND_EXPERIMENTS_HPP
#define QBND_EXPERIMENTS_HPP

#include <map>
#include <string>
#include <vector>

#include "qbnd/boundariness.hpp"

namespace qbnd {

struct ExperimentSpec {
  std::string name;
  int samples = 100;
  std::uint64_t seed = 12345;
  std::vector<int> dims;  // experiment-specific (e.g. erasure factor dim)
  std::map<std::string, double> tolerances;  // overrides of the stated defaults
  std::string output_path;  // CSV destination; empty = no file
  int resolution = 100;     // polytope map grid resolution
};

struct ExperimentResult {
  std::string name;
  bool pass = false;
  std::map<std::string, double> statistics;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> failures;  // diagnostics, empty when pass
  /// Every boundariness report produced along the way, for monotonicity
  /// and bound audits.
  std::vector<BoundarinessReport> reports;
};

/// Iterative vs magic-basis agreement on random interior qubit channels,
/// with erasure and depolarizing fixtures.
ExperimentResult exp_qubit_crosscheck(const ExperimentSpec& spec);

/// b(E (x) F) <= b(E) b(F) on random qubit channel pairs; the
/// multiplicativity gap is reported without asserting its sign. The d = 4
/// optimizer is seeded with the product of the factor optimizers, so an
/// under-converged tensor run can never fake a violation.
ExperimentResult exp_submultiplicativity(const ExperimentSpec& spec);

/// Multiplicativity against the completely depolarizing factor:
/// |b(E (x) F) - b(E)/d_F^2| <= 1e-5 for random qubit E.
ExperimentResult exp_product_depolarizing(const ExperimentSpec& spec);

/// Maximal boundariness sweeps: 1/d for states, 1/n for observables,
/// 1/d^2 for channels, with equality only at the maximally mixed fixtures.
ExperimentResult exp_max_boundariness(const ExperimentSpec& spec);

/// Best-distinguishable pure state: the largest trace distance from rho
/// equals 2 (1 - lambda_min), never exceeded by a random scan.
ExperimentResult exp_state_tightness(const ExperimentSpec& spec);

/// Local search over the sub-normalized set
/// R = { |y> : tr_1 |y><y| <= I/d } confirms the optimum is attained at
/// unit (maximally entangled) vectors and matches the entangled radius.
ExperimentResult exp_lemma_R(const ExperimentSpec& spec);

/// Boundariness and mixedness maps over triangle and square grids (CSV).
ExperimentResult exp_polytope_maps(const ExperimentSpec& spec);

const std::vector<std::string>& experiment_names();

/// Dispatch by spec.name; writes spec.output_path as CSV when set.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_csv(const ExperimentResult& result, const std::string& path);

}  // namespace qbnd

#endif  // QBND_EXPERIMENTS_HPP
