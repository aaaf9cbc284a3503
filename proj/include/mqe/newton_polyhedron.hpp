#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mqe/rational.hpp"
#include "mqe/symbol.hpp"

namespace mqe {

/// Half-space <normal, x> <= offset of the convex hull.
struct Halfspace {
  RationalVector normal;
  Rational offset;
};

/// Anisotropy indices of a regular polyhedron.
struct PolyhedronIndices {
  RationalVector mu_per_axis;  // mu_j = max_q 1/q_j
  Rational mu;                 // max_j mu_j
  RationalVector theta;        // mu / mu_j
  Rational sobolev_index;      // k(e) = max_q sum_j q_j
};

/// Newton polyhedron conv({0} U supports). Facet normals are the strictly
/// positive q with max over the polyhedron of <alpha,q> equal to 1.
struct NewtonPolyhedron {
  std::size_t dim = 0;
  std::vector<MultiIndex> vertices;        // S(F), includes 0, sorted
  std::vector<RationalVector> facet_normals;  // Q(F), sorted; empty unless regular
  std::vector<Halfspace> hull_facets;      // every facet of the hull (full-dimensional case)
  std::size_t affine_dim = 0;
  bool regular = false;
  bool degenerate = false;  // hull is {0}
  std::string diagnostic;
  std::optional<PolyhedronIndices> indices;
};

/// Exact facets and vertices of conv(points), points in N^n. Points need not
/// be distinct. Uses the double description method on the homogenized cone.
struct HullResult {
  std::size_t affine_dim = 0;
  std::vector<MultiIndex> vertices;
  std::vector<Halfspace> facets;  // only when affine_dim == n
};
HullResult convex_hull(std::size_t dim, const std::vector<MultiIndex>& points);

NewtonPolyhedron build_polyhedron(std::size_t dim, const std::vector<MultiIndex>& support);
NewtonPolyhedron build_polyhedron(const SymbolSystem& system);

struct RegularityReport {
  bool regular = false;
  std::string diagnostic;
};
RegularityReport is_regular(const NewtonPolyhedron& F);

/// Gauge k(alpha, F) = max_q <alpha, q>. Throws on irregular polyhedra.
Rational k_of(const NewtonPolyhedron& F, const RationalVector& alpha);
Rational k_of(const NewtonPolyhedron& F, const MultiIndex& alpha);

/// V(xi) = sum over vertices of |xi^alpha|.
double weight_V(const NewtonPolyhedron& F, std::span<const double> xi);

template <class Derived>
double weight_V(const NewtonPolyhedron& F, const Eigen::MatrixBase<Derived>& xi) {
  Eigen::VectorXd v = xi;
  return weight_V(F, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
}

}  // namespace mqe
