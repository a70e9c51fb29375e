#include "qbnd/polytope.hpp"

#include <cmath>
#include <string>

#include "qbnd/lp.hpp"

namespace qbnd {

namespace {

// Feasibility of V a = p, a >= 0 (the lift makes sum(a) = 1 implicit
// whenever <e, p> = 1).
bool member_lp(const Eigen::MatrixXd& V, const Eigen::VectorXd& p) {
  const Eigen::VectorXd c = Eigen::VectorXd::Zero(V.cols());
  return solve_lp(V, p, c).status == LpStatus::Optimal;
}

}  // namespace

PolytopeBase::PolytopeBase(Eigen::MatrixXd vertices, Eigen::VectorXd order_unit)
    : vertices_(std::move(vertices)), order_unit_(std::move(order_unit)) {
  const Eigen::Index n = vertices_.rows();
  const Eigen::Index m = vertices_.cols();
  if (n < 1 || m < 1 || order_unit_.size() != n)
    throw DimensionMismatchError("PolytopeBase: inconsistent dimensions");
  if (!vertices_.allFinite() || !order_unit_.allFinite())
    throw NonFiniteError("PolytopeBase: non-finite input");
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::abs(order_unit_.dot(vertices_.col(j)) - 1.0) > 1e-12)
      throw Error("PolytopeBase: base condition <e, v> = 1 violated at vertex " +
                  std::to_string(j));
  }
  if (m < n)
    throw DegenerateBaseError("PolytopeBase: fewer vertices than ambient dimension");
  // The cone over B must be generating: vertices span the ambient space.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vertices_);
  qr.setThreshold(1e-10);
  if (qr.rank() < n)
    throw DegenerateBaseError("PolytopeBase: vertices affinely dependent below dimension");
  // Minimality: no vertex may be a convex combination of the others.
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::MatrixXd others(n, m - 1);
    others << vertices_.leftCols(j), vertices_.rightCols(m - 1 - j);
    if (member_lp(others, vertices_.col(j)))
      throw Error("PolytopeBase: vertex " + std::to_string(j) +
                  " is a convex combination of the others");
  }
  centroid_ = vertices_.rowwise().mean();
}

PolytopeBase PolytopeBase::lifted(const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw DimensionMismatchError("lifted: no points");
  const Eigen::Index k = points.front().size();
  Eigen::MatrixXd V(k + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != k)
      throw DimensionMismatchError("lifted: ragged point list");
    V.col(static_cast<Eigen::Index>(j)) << points[j], 1.0;
  }
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k + 1);
  e(k) = 1.0;
  return PolytopeBase(std::move(V), std::move(e));
}

BasePoint lift_point(const Eigen::VectorXd& p) {
  BasePoint q(p.size() + 1);
  q << p, 1.0;
  return q;
}

bool is_member(const PolytopeBase& base, const BasePoint& p) {
  if (p.size() != base.ambient_dim())
    throw DimensionMismatchError("is_member: point dimension mismatch");
  return member_lp(base.vertices(), p);
}

Membership contains(const PolytopeBase& base, const BasePoint& p, double tol) {
  if (tol <= 0) throw Error("contains: tol must be positive");
  if (p.size() != base.ambient_dim())
    throw DimensionMismatchError("contains: point dimension mismatch");
  const Eigen::VectorXd dir = p - base.centroid();
  const double dist = dir.norm();
  if (dist <= tol) return Membership::Interior;

  // Stretch LP: the ray from the centroid through p leaves B at stretch
  // s* = max { s : c + s (p - c) in B }; p is interior iff s* > 1,
  // boundary iff s* = 1 within the band, outside iff s* < 1.
  const Eigen::Index n = base.ambient_dim();
  const Eigen::Index m = base.num_vertices();
  Eigen::MatrixXd A(n, m + 1);
  A.leftCols(m) = base.vertices();
  A.col(m) = -dir;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m + 1);
  c(m) = -1.0;  // maximize s
  const LpResult r = solve_lp(A, base.centroid(), c);
  if (r.status == LpStatus::Unbounded)
    throw Error("contains: unbounded stretch (base is not compact)");
  if (r.status == LpStatus::Infeasible)
    throw Error("contains: stretch LP infeasible");
  const double slack = (r.x(m) - 1.0) * dist;
  if (std::abs(slack) <= tol) return Membership::Boundary;
  return slack > 0 ? Membership::Interior : Membership::Outside;
}

double weight_t(const PolytopeBase& base, const BasePoint& y,
                const BasePoint& x) {
  if (!is_member(base, y))
    throw NotMemberError("weight_t: y is not in the base");
  if (!is_member(base, x))
    throw NotMemberError("weight_t: x is not in the base");
  if ((y - x).cwiseAbs().maxCoeff() <= 1e-12) return 1.0;
  double lo = 0.0, hi = 1.0;  // z(lo) in B; z(hi) not (x != y)
  for (int iter = 0; iter < 60 && hi - lo > 1e-11; ++iter) {
    const double t = 0.5 * (lo + hi);
    if (is_member(base, (y - t * x) / (1.0 - t)))
      lo = t;
    else
      hi = t;
  }
  return lo;
}

VertexOpt boundariness_polytope(const PolytopeBase& base, const BasePoint& y) {
  VertexOpt best;
  for (Eigen::Index j = 0; j < base.num_vertices(); ++j) {
    const double t = weight_t(base, y, base.vertex(j));
    if (best.vertex < 0 || t < best.value) {
      best.value = t;
      best.vertex = j;
    }
  }
  return best;
}

BaseNormPair base_norm_pair(const PolytopeBase& base, const Eigen::VectorXd& u) {
  const Eigen::Index n = base.ambient_dim();
  const Eigen::Index m = base.num_vertices();
  if (u.size() != n)
    throw DimensionMismatchError("base_norm_pair: vector dimension mismatch");
  const double uscale = u.cwiseAbs().maxCoeff();
  if (uscale == 0.0) return {0.0, 0.0};
  if (std::abs(base.order_unit().dot(u)) > 1e-9 * std::max(1.0, uscale))
    throw LpInfeasibleError("base_norm_pair: u is not in span(B - B)");

  // Decomposition form: min sum(a) + sum(b) s.t. V (a - b) = u.
  Eigen::MatrixXd Ap(n, 2 * m);
  Ap << base.vertices(), -base.vertices();
  const Eigen::VectorXd cp = Eigen::VectorXd::Ones(2 * m);
  const LpResult primal = solve_lp(Ap, u, cp);
  if (primal.status == LpStatus::Infeasible)
    throw LpInfeasibleError("base_norm_pair: u is outside span(B)");
  if (primal.status != LpStatus::Optimal)
    throw LpUnboundedError("base_norm_pair: decomposition LP failed");

  // Functional form: max 2 <g, u> s.t. 0 <= <g, v_j> <= 1. Free g split as
  // gp - gm; inequalities closed with slack and surplus variables.
  const Eigen::Index nv = 2 * n + 2 * m;
  Eigen::MatrixXd Ad = Eigen::MatrixXd::Zero(2 * m, nv);
  Eigen::VectorXd bd(2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Ad.block(j, 0, 1, n) = base.vertex(j).transpose();
    Ad.block(j, n, 1, n) = -base.vertex(j).transpose();
    Ad(j, 2 * n + j) = 1.0;  // <g, v> + slack = 1
    bd(j) = 1.0;
    Ad.block(m + j, 0, 1, n) = base.vertex(j).transpose();
    Ad.block(m + j, n, 1, n) = -base.vertex(j).transpose();
    Ad(m + j, 2 * n + m + j) = -1.0;  // <g, v> - surplus = 0
    bd(m + j) = 0.0;
  }
  Eigen::VectorXd cd = Eigen::VectorXd::Zero(nv);
  cd.head(n) = -2.0 * u;
  cd.segment(n, n) = 2.0 * u;
  const LpResult dual = solve_lp(Ad, bd, cd);
  if (dual.status == LpStatus::Unbounded)
    throw LpUnboundedError("base_norm_pair: functional LP unbounded (invalid base)");
  if (dual.status != LpStatus::Optimal)
    throw LpInfeasibleError("base_norm_pair: functional LP infeasible");
  return {-dual.objective, primal.objective};
}

double base_norm_polytope(const PolytopeBase& base, const Eigen::VectorXd& u) {
  const BaseNormPair pair = base_norm_pair(base, u);
  if (std::abs(pair.functional - pair.decomposition) >
      1e-9 * std::max(1.0, std::abs(pair.functional)))
    throw Error("base_norm_polytope: primal/dual disagreement");
  return pair.functional;
}

VertexOpt max_base_distance(const PolytopeBase& base, const BasePoint& y) {
  if (!is_member(base, y))
    throw NotMemberError("max_base_distance: y is not in the base");
  VertexOpt best;
  for (Eigen::Index j = 0; j < base.num_vertices(); ++j) {
    const double d = base_norm_polytope(base, base.vertex(j) - y);
    if (best.vertex < 0 || d > best.value) {
      best.value = d;
      best.vertex = j;
    }
  }
  const double b = boundariness_polytope(base, y).value;
  if (std::abs(best.value - 2.0 * (1.0 - b)) > 1e-9)
    throw Error("max_base_distance: distance does not match 2 (1 - b)");
  return best;
}

double mixedness_polytope(const PolytopeBase& base, const BasePoint& y) {
  double wmax = 0.0;
  for (Eigen::Index j = 0; j < base.num_vertices(); ++j)
    wmax = std::max(wmax, weight_t(base, y, base.vertex(j)));
  return 1.0 - wmax;
}

PolytopeDecomposition decompose_polytope(const PolytopeBase& base,
                                         const BasePoint& y) {
  const VertexOpt opt = boundariness_polytope(base, y);
  PolytopeDecomposition dec;
  dec.b = opt.value;
  dec.vertex = opt.vertex;
  dec.residual = (y - opt.value * base.vertex(opt.vertex)) / (1.0 - opt.value);
  const BasePoint rebuilt =
      opt.value * base.vertex(opt.vertex) + (1.0 - opt.value) * dec.residual;
  if ((rebuilt - y).cwiseAbs().maxCoeff() > 1e-9)
    throw ValidationFailedError("decompose_polytope: reconstruction residual");
  if (contains(base, dec.residual, 1e-8) != Membership::Boundary)
    throw ValidationFailedError("decompose_polytope: residual is not a boundary element");
  return dec;
}

}  // namespace qbnd
