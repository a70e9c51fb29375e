#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qbnd/experiments.hpp"
#include "qbnd/io_json.hpp"

namespace {

using namespace qbnd;

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

Eigen::VectorXd parse_point(const std::string& arg) {
  std::vector<double> coords;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) coords.push_back(std::stod(tok));
  Eigen::VectorXd p(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i)
    p(static_cast<Eigen::Index>(i)) = coords[i];
  return p;
}

struct BoundarinessArgs {
  std::string in_path, out_path, point_arg;
  std::string method = "auto";
  int restarts = 16;
  double tol = 1e-12;
  std::uint64_t seed = 12345;
};

int run_boundariness(const BoundarinessArgs& args) {
  const LoadedObject obj = load_object(args.in_path);
  Json out;
  if (std::holds_alternative<QuantumState>(obj)) {
    out = report_to_json(b_state(std::get<QuantumState>(obj)), "state");
  } else if (std::holds_alternative<Povm>(obj)) {
    out = report_to_json(b_povm(std::get<Povm>(obj)), "povm");
  } else if (std::holds_alternative<QuantumChannel>(obj)) {
    const auto& ch = std::get<QuantumChannel>(obj);
    OptimizerConfig cfg;
    cfg.restarts = args.restarts;
    cfg.rel_tol = args.tol;
    cfg.seed = args.seed;
    BoundarinessReport rep;
    if (args.method == "iterative") {
      rep = b_channel(ch, cfg);
    } else if (args.method == "exact") {
      if (ch.dim != 2) {
        std::cerr << "error: the exact method needs a qubit channel; "
                     "use --method iterative for d > 2\n";
        return 2;
      }
      rep = b_channel_qubit(ch);
    } else {
      rep = (ch.dim == 2) ? b_channel_qubit(ch) : b_channel(ch, cfg);
    }
    out = report_to_json(rep, "channel");
  } else {
    const auto& base = std::get<PolytopeBase>(obj);
    if (args.point_arg.empty()) {
      std::cerr << "error: polytope inputs need --point x1,x2,...\n";
      return 2;
    }
    const Eigen::VectorXd y = parse_point(args.point_arg);
    const PolytopeDecomposition dec = decompose_polytope(base, y);
    const VertexOpt dist = max_base_distance(base, y);
    Json residual = Json::array();
    for (Eigen::Index i = 0; i < dec.residual.size(); ++i)
      residual.push_back(dec.residual(i));
    out = Json{{"b", dec.b},
               {"method", "closed_form"},
               {"optimizer_index", dec.vertex},
               {"complement", {{"point", residual}}},
               {"mixedness", mixedness_polytope(base, y)},
               {"max_base_distance", dist.value},
               {"max_base_distance_vertex", dist.vertex}};
  }
  emit(out, args.out_path);
  return 0;
}

int run_distance(const std::string& in_path, const std::string& out_path) {
  const LoadedObject obj = load_object(in_path);
  if (!std::holds_alternative<QuantumState>(obj)) {
    std::cerr << "error: distance needs a state input\n";
    return 2;
  }
  const auto& s = std::get<QuantumState>(obj);
  const BoundarinessReport rep = b_state(s);
  const Eigen::MatrixXcd witness =
      rep.optimizer_vector * rep.optimizer_vector.adjoint();
  const double dist = trace_norm(s.rho - witness);
  Json out{{"b", rep.b},
           {"max_trace_distance", 2.0 * (1.0 - rep.b)},
           {"achieved_distance", dist},
           {"identity_residual", std::abs(dist - 2.0 * (1.0 - rep.b))},
           {"witness", matrix_to_json(witness)}};
  emit(out, out_path);
  return 0;
}

int run_experiment_cmd(const ExperimentSpec& spec) {
  const ExperimentResult res = run_experiment(spec);
  Json stats = Json::object();
  for (const auto& [k, v] : res.statistics) stats[k] = v;
  Json out{{"name", res.name},
           {"pass", res.pass},
           {"statistics", std::move(stats)},
           {"rows", res.rows.size()}};
  if (!res.failures.empty()) out["failures"] = res.failures;
  if (!spec.output_path.empty()) out["csv"] = spec.output_path;
  std::cout << out.dump(2) << "\n";
  return res.pass ? 0 : 1;
}

int run_validate(const std::string& in_path) {
  const LoadedObject obj = load_object(in_path);
  std::cout << "valid " << object_kind(obj) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundariness of quantum states, observables, channels, and polytope bases"};
  app.require_subcommand(1);

  BoundarinessArgs bargs;
  auto* bnd = app.add_subcommand(
      "boundariness", "b(y), optimal witness and boundary decomposition");
  bnd->add_option("--in", bargs.in_path, "input JSON object")->required();
  bnd->add_option("--method", bargs.method, "auto|exact|iterative")
      ->check(CLI::IsMember({"auto", "exact", "iterative"}));
  bnd->add_option("--restarts", bargs.restarts, "optimizer restarts");
  bnd->add_option("--tol", bargs.tol, "optimizer relative tolerance");
  bnd->add_option("--seed", bargs.seed, "optimizer seed");
  bnd->add_option("--out", bargs.out_path, "write the report here");
  bnd->add_option("--point", bargs.point_arg,
                  "base point x1,x2,... (polytope inputs)");

  std::string dist_in, dist_out;
  auto* dist = app.add_subcommand(
      "distance", "largest trace distance from a state, 2(1 - b)");
  dist->add_option("--in", dist_in, "input state JSON")->required();
  dist->add_option("--out", dist_out, "write the report here");

  ExperimentSpec spec;
  int dim_opt = 0;
  auto* exp = app.add_subcommand("experiment", "run a named experiment");
  exp->add_option("name", spec.name, "one of: crosscheck, submult, product, "
                                     "maxb, tightness, lemmar, polytope")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  exp->add_option("--samples", spec.samples, "sample count")
      ->check(CLI::PositiveNumber);
  exp->add_option("--seed", spec.seed, "experiment seed");
  exp->add_option("--csv", spec.output_path, "CSV output path");
  exp->add_option("--dim", dim_opt, "erasure factor dimension (product)");
  exp->add_option("--resolution", spec.resolution, "grid resolution (polytope)");

  std::string val_in;
  auto* val = app.add_subcommand("validate", "check the invariants of a JSON object");
  val->add_option("--in", val_in, "input JSON object")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*bnd) return run_boundariness(bargs);
    if (*dist) return run_distance(dist_in, dist_out);
    if (*exp) {
      if (dim_opt > 0) spec.dims = {dim_opt};
      return run_experiment_cmd(spec);
    }
    if (*val) return run_validate(val_in);
  } catch (const qbnd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
