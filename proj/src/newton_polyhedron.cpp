#include "mqe/newton_polyhedron.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mqe {

namespace {

using Matrix = std::vector<RationalVector>;

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[row][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t rank_of(Matrix m) { return row_reduce(m).size(); }

// Scales a nonzero vector to a primitive integer vector with the same direction.
RationalVector primitive(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v)
    if (x != 0) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
  Integer g = 0;
  for (const auto& x : v)
    if (x != 0) g = boost::multiprecision::gcd(g, Integer(abs(Integer(numerator(x) * (l / denominator(x))))));
  RationalVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * l / g;
  return out;
}

struct Ray {
  RationalVector y;
  std::vector<bool> zeros;  // over constraint rows
};

// Extreme rays of {y : A y >= 0}; A has full column rank.
std::vector<Ray> double_description(const Matrix& A) {
  const std::size_t rows = A.size(), cols = A.front().size();
  // initial basis of independent rows
  std::vector<std::size_t> basis;
  {
    Matrix acc;
    for (std::size_t i = 0; i < rows && basis.size() < cols; ++i) {
      acc.push_back(A[i]);
      if (rank_of(acc) == acc.size())
        basis.push_back(i);
      else
        acc.pop_back();
    }
  }
  if (basis.size() != cols) throw std::logic_error("double_description: constraint matrix is rank deficient");

  // inverse of A_basis by Gauss-Jordan; its columns are the initial rays
  Matrix aug(cols, RationalVector(2 * cols));
  for (std::size_t r = 0; r < cols; ++r) {
    for (std::size_t c = 0; c < cols; ++c) aug[r][c] = A[basis[r]][c];
    aug[r][cols + r] = 1;
  }
  row_reduce(aug);
  for (std::size_t r = 0; r < cols; ++r) {
    const Rational d = aug[r][r];
    for (auto& x : aug[r]) x /= d;
  }
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < cols; ++j) {
    Ray ray;
    ray.y.resize(cols);
    for (std::size_t r = 0; r < cols; ++r) ray.y[r] = aug[r][cols + j];
    ray.y = primitive(ray.y);
    ray.zeros.assign(rows, false);
    for (std::size_t r = 0; r < cols; ++r)
      if (r != j) ray.zeros[basis[r]] = true;
    rays.push_back(std::move(ray));
  }

  std::vector<bool> processed(rows, false);
  for (std::size_t b : basis) processed[b] = true;

  for (std::size_t i = 0; i < rows; ++i) {
    if (processed[i]) continue;
    std::vector<Rational> s(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) s[k] = dot(A[i], rays[k].y);

    std::vector<Ray> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (s[k] >= 0) {
        Ray keep = rays[k];
        if (s[k] == 0) keep.zeros[i] = true;
        next.push_back(std::move(keep));
      }
    }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (s[p] <= 0) continue;
      for (std::size_t m = 0; m < rays.size(); ++m) {
        if (s[m] >= 0) continue;
        std::vector<bool> common(rows, false);
        std::size_t count = 0;
        for (std::size_t r = 0; r < rows; ++r)
          if (processed[r] && rays[p].zeros[r] && rays[m].zeros[r]) common[r] = true, ++count;
        if (count + 2 < cols) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == m) continue;
          bool contains = true;
          for (std::size_t r = 0; r < rows && contains; ++r)
            if (common[r] && !rays[t].zeros[r]) contains = false;
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        Ray combo;
        combo.y.resize(cols);
        for (std::size_t c = 0; c < cols; ++c) combo.y[c] = s[p] * rays[m].y[c] - s[m] * rays[p].y[c];
        combo.y = primitive(combo.y);
        combo.zeros = common;
        combo.zeros[i] = true;
        next.push_back(std::move(combo));
      }
    }
    rays = std::move(next);
    processed[i] = true;
  }
  return rays;
}

}  // namespace

HullResult convex_hull(std::size_t dim, const std::vector<MultiIndex>& input) {
  if (dim == 0) throw DimensionError("convex_hull: dimension must be at least 1");
  std::set<MultiIndex> unique(input.begin(), input.end());
  if (unique.empty()) throw std::invalid_argument("convex_hull: no points");
  for (const auto& p : unique)
    if (p.size() != dim) throw DimensionError("convex_hull: point dimension mismatch");
  std::vector<MultiIndex> points(unique.begin(), unique.end());

  HullResult result;
  const MultiIndex& base = points.front();
  Matrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back((points[i].as_rational()));
  for (auto& d : diffs)
    for (std::size_t j = 0; j < dim; ++j) d[j] -= base[j];
  Matrix reduced = diffs;
  std::vector<std::size_t> coords = diffs.empty() ? std::vector<std::size_t>{} : row_reduce(reduced);
  result.affine_dim = coords.size();
  if (coords.empty()) {
    result.vertices = {base};
    return result;
  }

  // homogenized constraint rows (1, p_J); the projection onto J is injective
  const std::size_t d = coords.size();
  Matrix A;
  for (const auto& p : points) {
    RationalVector row(d + 1);
    row[0] = 1;
    for (std::size_t k = 0; k < d; ++k) row[k + 1] = p[coords[k]];
    A.push_back(std::move(row));
  }
  std::vector<Ray> rays = double_description(A);

  for (std::size_t i = 0; i < points.size(); ++i) {
    Matrix tight;
    for (const auto& ray : rays)
      if (ray.zeros[i]) tight.push_back(ray.y);
    if (rank_of(tight) == d) result.vertices.push_back(points[i]);
  }
  std::sort(result.vertices.begin(), result.vertices.end());

  if (d == dim) {
    for (const auto& ray : rays) {
      Halfspace h;
      h.offset = ray.y[0];
      h.normal.resize(dim);
      for (std::size_t j = 0; j < dim; ++j) h.normal[j] = -ray.y[j + 1];
      if (h.offset != 0) {
        for (auto& x : h.normal) x /= h.offset;
        h.offset = 1;
      }
      result.facets.push_back(std::move(h));
    }
    std::sort(result.facets.begin(), result.facets.end(), [](const Halfspace& a, const Halfspace& b) {
      if (a.offset != b.offset) return a.offset < b.offset;
      return a.normal < b.normal;
    });
  }
  return result;
}

namespace {

std::string vector_text(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

// Fills regular / diagnostic / facet_normals from the hull facets.
void classify(NewtonPolyhedron& F) {
  F.regular = false;
  F.facet_normals.clear();
  if (F.degenerate) {
    F.diagnostic = "degenerate polyhedron {0}: the system has no non-constant support";
    return;
  }
  if (F.affine_dim < F.dim) {
    F.diagnostic = "hull has affine dimension " + std::to_string(F.affine_dim) + " < " + std::to_string(F.dim) +
                   ": the support lies in a coordinate subspace, so no strictly positive facet description exists";
    return;
  }
  std::vector<RationalVector> normals;
  for (const auto& h : F.hull_facets) {
    if (h.offset == 0) {
      std::size_t nonzero = 0, axis = 0;
      for (std::size_t j = 0; j < F.dim; ++j)
        if (h.normal[j] != 0) ++nonzero, axis = j;
      if (nonzero == 1 && h.normal[axis] < 0) continue;  // alpha_axis >= 0
      F.diagnostic = "facet through the origin with normal " + vector_text(h.normal) +
                     " is not a coordinate hyperplane";
      return;
    }
    for (std::size_t j = 0; j < F.dim; ++j) {
      if (h.normal[j] <= 0) {
        F.diagnostic = "facet <alpha,q> = 1 with q = " + vector_text(h.normal) + " has a non-positive component";
        return;
      }
    }
    normals.push_back(h.normal);
  }
  std::sort(normals.begin(), normals.end());
  F.facet_normals = std::move(normals);
  F.regular = true;
  F.diagnostic = "regular";
}

PolyhedronIndices compute_indices(const NewtonPolyhedron& F) {
  PolyhedronIndices ix;
  ix.mu_per_axis.assign(F.dim, Rational(0));
  ix.sobolev_index = 0;
  for (const auto& q : F.facet_normals) {
    Rational sum = 0;
    for (std::size_t j = 0; j < F.dim; ++j) {
      ix.mu_per_axis[j] = std::max(ix.mu_per_axis[j], Rational(1 / q[j]));
      sum += q[j];
    }
    ix.sobolev_index = std::max(ix.sobolev_index, sum);
  }
  ix.mu = *std::max_element(ix.mu_per_axis.begin(), ix.mu_per_axis.end());
  for (const auto& m : ix.mu_per_axis) ix.theta.push_back(ix.mu / m);
  return ix;
}

}  // namespace

NewtonPolyhedron build_polyhedron(std::size_t dim, const std::vector<MultiIndex>& support) {
  if (dim == 0) throw DimensionError("build_polyhedron: dimension-zero system");
  NewtonPolyhedron F;
  F.dim = dim;
  std::vector<MultiIndex> points = support;
  points.push_back(MultiIndex::zero(dim));
  HullResult hull = convex_hull(dim, points);
  F.vertices = hull.vertices;
  F.hull_facets = hull.facets;
  F.affine_dim = hull.affine_dim;
  F.degenerate = hull.affine_dim == 0;
  classify(F);
  if (F.regular) F.indices = compute_indices(F);
  return F;
}

NewtonPolyhedron build_polyhedron(const SymbolSystem& system) {
  std::vector<MultiIndex> support;
  for (const auto& p : system)
    for (const auto& alpha : p.support()) support.push_back(alpha);
  return build_polyhedron(system.dim(), support);
}

RegularityReport is_regular(const NewtonPolyhedron& F) {
  NewtonPolyhedron copy = F;
  classify(copy);
  return {copy.regular, copy.diagnostic};
}

Rational k_of(const NewtonPolyhedron& F, const RationalVector& alpha) {
  if (!F.regular) throw std::invalid_argument("k_of: polyhedron is not regular (" + F.diagnostic + ")");
  if (alpha.size() != F.dim) throw DimensionError("k_of: dimension mismatch");
  for (const auto& a : alpha)
    if (a < 0) throw std::invalid_argument("k_of: alpha must be non-negative");
  Rational best = 0;
  for (const auto& q : F.facet_normals) best = std::max(best, dot(alpha, q));
  return best;
}

Rational k_of(const NewtonPolyhedron& F, const MultiIndex& alpha) { return k_of(F, alpha.as_rational()); }

double weight_V(const NewtonPolyhedron& F, std::span<const double> xi) {
  if (xi.size() != F.dim) throw DimensionError("weight_V: dimension mismatch");
  double v = 0.0;
  for (const auto& alpha : F.vertices) v += std::abs(monomial<double>(alpha, xi));
  return v;
}

}  // namespace mqe
