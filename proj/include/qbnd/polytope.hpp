#ifndef QBND_POLYTOPE_HPP
#define QBND_POLYTOPE_HPP

#include <Eigen/Dense>
#include <vector>

#include "qbnd/errors.hpp"

namespace qbnd {

using BasePoint = Eigen::VectorXd;

enum class Membership { Interior, Boundary, Outside };

/// Vertex-listed compact convex base of a polyhedral cone together with the
/// order-unit functional e normalizing it, <e, v> = 1 for every vertex.
///
/// A polygon sitting at arbitrary position (say the triangle with a vertex
/// at the origin) cannot satisfy the base condition with a linear
/// functional; `lifted` embeds such point sets at height 1 (append
/// coordinate 1, e = last coordinate), which leaves weights, boundariness,
/// mixedness and base-norm distances unchanged.
class PolytopeBase {
 public:
  /// Vertices are the columns of `vertices`. Throws DegenerateBaseError if
  /// the vertices do not span the ambient space, Error if the base
  /// condition or vertex minimality fails.
  PolytopeBase(Eigen::MatrixXd vertices, Eigen::VectorXd order_unit);

  static PolytopeBase lifted(const std::vector<Eigen::VectorXd>& points);

  Eigen::Index ambient_dim() const { return vertices_.rows(); }
  Eigen::Index num_vertices() const { return vertices_.cols(); }
  const Eigen::MatrixXd& vertices() const { return vertices_; }
  Eigen::VectorXd vertex(Eigen::Index i) const { return vertices_.col(i); }
  const Eigen::VectorXd& order_unit() const { return order_unit_; }
  const Eigen::VectorXd& centroid() const { return centroid_; }

 private:
  Eigen::MatrixXd vertices_;
  Eigen::VectorXd order_unit_;
  Eigen::VectorXd centroid_;
};

/// Appends coordinate 1 (the height-1 embedding used by lifted bases).
BasePoint lift_point(const Eigen::VectorXd& p);

/// LP feasibility test for p in conv(vertices). Feasibility resolution is
/// the LP's own threshold, scaled with the magnitude of p.
bool is_member(const PolytopeBase& base, const BasePoint& p);

/// Classifies p against the base: Interior / Boundary / Outside, with a
/// Boundary band of |slack| <= tol.
Membership contains(const PolytopeBase& base, const BasePoint& p,
                    double tol = 1e-9);

/// Weight function t_y(x) = sup { t : (y - t x) / (1 - t) in B }, found by
/// bisection on LP membership (60 iterations, absolute tolerance 1e-11).
/// Throws NotMemberError unless both points lie in the base.
double weight_t(const PolytopeBase& base, const BasePoint& y,
                const BasePoint& x);

struct VertexOpt {
  double value = 0.0;
  Eigen::Index vertex = -1;
};

/// Boundariness b(y) = min over vertices of t_y(v); ties resolved toward
/// the lowest vertex index.
VertexOpt boundariness_polytope(const PolytopeBase& base, const BasePoint& y);

struct BaseNormPair {
  double functional = 0.0;     // max 2 <g, u>, 0 <= <g, v> <= 1
  double decomposition = 0.0;  // min { l + m : u = l b1 - m b2 }
};

/// Both base-norm LPs for u, which must satisfy <e, u> = 0 (a span(B - B)
/// element).
BaseNormPair base_norm_pair(const PolytopeBase& base, const Eigen::VectorXd& u);

/// Base norm of u; solves both LP forms and asserts their agreement
/// to 1e-9.
double base_norm_polytope(const PolytopeBase& base, const Eigen::VectorXd& u);

/// Largest base-norm distance from y to the base, attained at a vertex;
/// checks the identity dist = 2 (1 - b(y)) to 1e-9.
VertexOpt max_base_distance(const PolytopeBase& base, const BasePoint& y);

/// Mixedness m(y) = 1 - max over vertices of t_y(v).
double mixedness_polytope(const PolytopeBase& base, const BasePoint& y);

struct PolytopeDecomposition {
  double b = 0.0;
  Eigen::Index vertex = -1;
  BasePoint residual;  // boundary element z with y = b * v + (1 - b) * z
};

/// Extracts and verifies the optimal two-term boundary decomposition of y.
PolytopeDecomposition decompose_polytope(const PolytopeBase& base,
                                         const BasePoint& y);

}  // namespace qbnd

#endif  // QBND_POLYTOPE_HPP
