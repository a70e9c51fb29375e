#include "qbnd/io_json.hpp"

#include <cstdio>
#include <fstream>

namespace qbnd {

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json data = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      data.push_back({m(r, c).real(), m(r, c).imag()});
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXcd matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw Error("matrix: expected {rows, cols, data}");
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const Json& data = j.at("data");
  if (rows < 1 || cols < 1)
    throw DimensionMismatchError("matrix: rows and cols must be positive");
  if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw DimensionMismatchError("matrix: data length is not rows*cols");
  Eigen::MatrixXcd m(rows, cols);
  Eigen::Index k = 0;
  for (const auto& entry : data) {
    if (!entry.is_array() || entry.size() != 2)
      throw Error("matrix: entries must be [re, im] pairs");
    m(k / cols, k % cols) = Cplx(entry[0].get<double>(), entry[1].get<double>());
    ++k;
  }
  if (!m.allFinite()) throw NonFiniteError("matrix: non-finite entries");
  return m;
}

Json state_to_json(const QuantumState& s) {
  return Json{{"kind", "state"}, {"dim", s.dim}, {"rho", matrix_to_json(s.rho)}};
}

Json povm_to_json(const Povm& p) {
  Json effects = Json::array();
  for (const auto& e : p.effects) effects.push_back(matrix_to_json(e));
  return Json{{"kind", "povm"}, {"dim", p.dim}, {"effects", std::move(effects)}};
}

Json channel_to_json(const QuantumChannel& c) {
  Json j{{"kind", "channel"}, {"dim", c.dim}};
  if (!c.kraus.empty()) {
    j["repr"] = "kraus";
    Json ops = Json::array();
    for (const auto& a : c.kraus) ops.push_back(matrix_to_json(a));
    j["kraus"] = std::move(ops);
  } else {
    j["repr"] = "choi";
    j["choi"] = matrix_to_json(c.choi);
  }
  return j;
}

Json polytope_to_json(const PolytopeBase& b) {
  Json verts = Json::array();
  for (Eigen::Index j = 0; j < b.num_vertices(); ++j) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < b.ambient_dim(); ++i) v.push_back(b.vertex(j)(i));
    verts.push_back(std::move(v));
  }
  Json e = Json::array();
  for (Eigen::Index i = 0; i < b.ambient_dim(); ++i) e.push_back(b.order_unit()(i));
  return Json{{"dim", b.ambient_dim()},
              {"vertices", std::move(verts)},
              {"order_unit", std::move(e)}};
}

QuantumState state_from_json(const Json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  QuantumState s{dim, matrix_from_json(j.at("rho"))};
  validate_state(s);
  return s;
}

Povm povm_from_json(const Json& j) {
  Povm p{j.at("dim").get<Eigen::Index>(), {}};
  for (const auto& e : j.at("effects")) p.effects.push_back(matrix_from_json(e));
  validate_povm(p);
  return p;
}

QuantumChannel channel_from_json(const Json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  const std::string repr = j.value("repr", "choi");
  QuantumChannel c;
  if (repr == "kraus") {
    std::vector<Eigen::MatrixXcd> kraus;
    for (const auto& a : j.at("kraus")) kraus.push_back(matrix_from_json(a));
    c = choi_from_kraus(kraus, dim);
  } else if (repr == "choi") {
    c = QuantumChannel{dim, matrix_from_json(j.at("choi")), {}};
  } else {
    throw Error("channel: repr must be \"choi\" or \"kraus\"");
  }
  validate_channel(c);
  return c;
}

PolytopeBase polytope_from_json(const Json& j) {
  const auto dim = j.at("dim").get<Eigen::Index>();
  const Json& verts = j.at("vertices");
  if (!verts.is_array() || verts.empty())
    throw Error("polytope: vertices must be a non-empty array");
  Eigen::MatrixXd v(dim, static_cast<Eigen::Index>(verts.size()));
  Eigen::Index col = 0;
  for (const auto& vj : verts) {
    if (static_cast<Eigen::Index>(vj.size()) != dim)
      throw DimensionMismatchError("polytope: vertex length is not dim");
    for (Eigen::Index i = 0; i < dim; ++i) v(i, col) = vj[i].get<double>();
    ++col;
  }
  const Json& ej = j.at("order_unit");
  if (static_cast<Eigen::Index>(ej.size()) != dim)
    throw DimensionMismatchError("polytope: order_unit length is not dim");
  Eigen::VectorXd e(dim);
  for (Eigen::Index i = 0; i < dim; ++i) e(i) = ej[i].get<double>();
  return PolytopeBase(std::move(v), std::move(e));
}

LoadedObject object_from_json(const Json& j) {
  const std::string kind = j.value("kind", j.contains("vertices") ? "polytope" : "");
  if (kind == "state") return state_from_json(j);
  if (kind == "povm") return povm_from_json(j);
  if (kind == "channel") return channel_from_json(j);
  if (kind == "polytope") return polytope_from_json(j);
  throw Error("object: unknown kind \"" + kind + "\"");
}

LoadedObject load_object(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error("invalid JSON in " + path + ": " + e.what());
  }
  return object_from_json(j);
}

const char* object_kind(const LoadedObject& obj) {
  switch (obj.index()) {
    case 0: return "state";
    case 1: return "povm";
    case 2: return "channel";
    default: return "polytope";
  }
}

Json report_to_json(const BoundarinessReport& rep, const std::string& kind) {
  Json j{{"b", rep.b},
         {"method", method_name(rep.method)},
         {"iterations", rep.iterations},
         {"restarts_used", rep.restarts_used},
         {"converged", rep.converged},
         {"objective_history", rep.objective_history}};
  Json res = Json::object();
  for (const auto& [name, value] : rep.residuals) res[name] = value;
  j["residuals"] = std::move(res);
  if (kind == "state") {
    j["optimizer"] = matrix_to_json(rep.optimizer_vector);
    j["complement"] =
        state_to_json(QuantumState{rep.complement.front().rows(),
                                   rep.complement.front()});
  } else if (kind == "povm") {
    j["optimizer_index"] = rep.optimizer_index;
    const Eigen::Index dim = rep.complement.front().rows();
    j["complement"] = povm_to_json(Povm{dim, rep.complement});
  } else if (kind == "channel") {
    j["optimizer"] = matrix_to_json(rep.optimizer_unitary);
    const Eigen::Index d = rep.optimizer_unitary.rows();
    j["complement"] =
        Json{{"kind", "channel"},
             {"dim", d},
             {"repr", "choi"},
             {"choi", matrix_to_json(rep.complement.front())}};
  }
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qbnd
