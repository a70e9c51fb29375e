#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qbnd/experiments.hpp"
#include "qbnd/io_json.hpp"

using namespace qbnd;

TEST_CASE("crosscheck experiment passes and reproduces bit-identically") {
  ExperimentSpec spec;
  spec.name = "crosscheck";
  spec.samples = 10;
  spec.seed = 99;
  const ExperimentResult a = exp_qubit_crosscheck(spec);
  CHECK(a.pass);
  CHECK(a.statistics.at("max_gap") <= 1e-6);
  CHECK(a.statistics.at("fixture_max_gap") <= 1e-9);
  CHECK(a.rows.size() == 10);

  const ExperimentResult b = exp_qubit_crosscheck(spec);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < a.rows[i].size(); ++j)
      CHECK(a.rows[i][j] == b.rows[i][j]);
}

TEST_CASE("submultiplicativity experiment sees no violations") {
  ExperimentSpec spec;
  spec.name = "submult";
  spec.samples = 5;
  spec.seed = 7;
  const ExperimentResult r = exp_submultiplicativity(spec);
  CHECK(r.pass);
  CHECK(r.statistics.at("violations") == 0.0);
  CHECK(r.rows.size() == 5);
  // the paper leaves the sign of the gap open; both columns must be present
  CHECK(r.statistics.count("gap_min") == 1);
  CHECK(r.statistics.count("gap_max") == 1);
}

TEST_CASE("product experiment matches b(E)/d_F^2") {
  ExperimentSpec spec;
  spec.name = "product";
  spec.samples = 3;
  spec.seed = 13;
  const ExperimentResult r = exp_product_depolarizing(spec);
  CHECK(r.pass);
  CHECK(r.statistics.at("max_error") <= 1e-5);
}

TEST_CASE("product experiment with a qutrit erasure factor") {
  ExperimentSpec spec;
  spec.name = "product";
  spec.samples = 1;
  spec.seed = 17;
  spec.dims = {3};
  const ExperimentResult r = exp_product_depolarizing(spec);
  CHECK(r.pass);
}

TEST_CASE("max boundariness sweep stays below the closed-form maxima") {
  ExperimentSpec spec;
  spec.name = "maxb";
  spec.samples = 50;
  spec.seed = 23;
  const ExperimentResult r = exp_max_boundariness(spec);
  CHECK(r.pass);
  CHECK(r.statistics.at("perturbed_depolarizing_b") < 0.25);
}

TEST_CASE("a thousand random qutrits stay strictly below 1/3") {
  RandomSource rng(29);
  double max_b = 0.0;
  for (int k = 0; k < 1000; ++k)
    max_b = std::max(max_b, b_state(random_state(3, rng)).b);
  CHECK(max_b < 1.0 / 3);
}

TEST_CASE("state tightness experiment") {
  ExperimentSpec spec;
  spec.name = "tightness";
  spec.samples = 10;
  spec.seed = 31;
  const ExperimentResult r = exp_state_tightness(spec);
  CHECK(r.pass);
  CHECK(r.statistics.at("max_agreement_error") <= 1e-9);
}

TEST_CASE("sub-normalized search confirms the entangled radius") {
  ExperimentSpec spec;
  spec.name = "lemmar";
  spec.samples = 2;
  spec.seed = 37;
  const ExperimentResult r = exp_lemma_R(spec);
  CHECK(r.pass);
  for (const auto& row : r.rows) {
    CHECK(row[2] <= 1e-6);          // norm defect
    CHECK(row[1] <= row[3] + 1e-6 * std::max(1.0, row[3]));
  }
}

TEST_CASE("polytope maps respect b <= m and the grid maxima") {
  ExperimentSpec spec;
  spec.name = "polytope";
  spec.samples = 1;
  spec.resolution = 20;
  const ExperimentResult r = exp_polytope_maps(spec);
  CHECK(r.pass);
  CHECK(r.statistics.at("min_m_minus_b") >= -1e-10);
  CHECK(r.statistics.at("triangle_max_b") <= 1.0 / 3 + 1e-9);
  CHECK(r.statistics.at("square_max_b") <= 0.5 + 1e-9);
  // triangle rows + square rows at this resolution
  CHECK(r.rows.size() == 231 + 441);

  ExperimentSpec bad = spec;
  bad.resolution = 5;
  CHECK_THROWS_AS(exp_polytope_maps(bad), Error);
}

TEST_CASE("run_experiment dispatch and CSV emission") {
  ExperimentSpec spec;
  spec.name = "tightness";
  spec.samples = 3;
  spec.seed = 41;
  spec.output_path = "/tmp/qbnd_tightness_test.csv";
  const ExperimentResult r = run_experiment(spec);
  CHECK(r.pass);
  std::ifstream in(spec.output_path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "sample,d,lambda_min,closed_form,witness_dist,scan_max");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 3);
  std::remove(spec.output_path.c_str());

  ExperimentSpec bad;
  bad.name = "nope";
  CHECK_THROWS_AS(run_experiment(bad), Error);
}

TEST_CASE("report json carries the documented schema") {
  RandomSource rng(47);
  const QuantumState s = random_state(2, rng);
  const Json js = report_to_json(b_state(s), "state");
  for (const char* key : {"b", "method", "optimizer", "complement",
                          "iterations", "restarts_used", "residuals"})
    CHECK(js.contains(key));
  CHECK(js.at("complement").at("kind") == "state");

  const Povm p = random_povm(2, 3, rng);
  const Json jp = report_to_json(b_povm(p), "povm");
  CHECK(jp.contains("optimizer_index"));
  CHECK(jp.at("complement").at("kind") == "povm");

  const QuantumChannel ch = depolarizing_channel(2);
  const Json jc = report_to_json(b_channel_qubit(ch), "channel");
  CHECK(jc.at("b").get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(jc.at("method") == "magic_basis");
  CHECK(jc.at("optimizer").at("rows") == 2);
  CHECK(jc.at("complement").at("repr") == "choi");
  // complement deserializes back into a valid boundary channel
  const QuantumChannel g = channel_from_json(jc.at("complement"));
  CHECK(is_boundary(g));
}

TEST_CASE("tolerance overrides are honored") {
  ExperimentSpec spec;
  spec.name = "crosscheck";
  spec.samples = 2;
  spec.seed = 43;
  spec.tolerances["max_gap"] = 1e-30;  // impossible bar
  const ExperimentResult r = exp_qubit_crosscheck(spec);
  CHECK(!r.pass);
  CHECK(!r.failures.empty());
}
