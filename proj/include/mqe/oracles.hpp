#pragma once

// Brute-force reference computations for tests and selfcheck. Nothing here calls
// into the double-description hull or the facet-normal gauge.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "mqe/rational.hpp"
#include "mqe/symbol.hpp"

namespace oracle {

using mqe::Rational;
using mqe::RationalVector;

// Solves M x = b exactly (M is rows x cols); returns the unique solution or
// nothing if the system is inconsistent or underdetermined.
inline std::optional<RationalVector> solve_unique(std::vector<RationalVector> M, RationalVector b) {
  const std::size_t rows = M.size(), cols = M.empty() ? 0 : M[0].size();
  for (std::size_t r = 0; r < rows; ++r) M[r].push_back(b[r]);
  std::size_t row = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < cols && row < rows; ++c) {
    std::size_t p = row;
    while (p < rows && M[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row || M[r][c] == 0) continue;
      Rational f = M[r][c] / M[row][c];
      for (std::size_t k = c; k <= cols; ++k) M[r][k] -= f * M[row][k];
    }
    piv.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < rows; ++r)
    if (M[r][cols] != 0) return std::nullopt;
  if (piv.size() != cols) return std::nullopt;
  RationalVector x(cols);
  for (std::size_t r = 0; r < cols; ++r) x[piv[r]] = M[r][cols] / M[r][piv[r]];
  return x;
}

// Caratheodory: p in conv(pts) iff p is a convex combination of some affinely
// independent subset of at most n+1 points.
inline bool in_hull(const std::vector<RationalVector>& pts, const RationalVector& p) {
  const std::size_t n = p.size(), m = pts.size();
  for (std::size_t k = 1; k <= std::min(m, n + 1); ++k) {
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
    do {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (mask[i]) idx.push_back(i);
      std::vector<RationalVector> M(n + 1, RationalVector(k));
      RationalVector b(n + 1);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t c = 0; c < k; ++c) M[j][c] = pts[idx[c]][j];
        b[j] = p[j];
      }
      for (std::size_t c = 0; c < k; ++c) M[n][c] = 1;
      b[n] = 1;
      auto lam = solve_unique(M, b);
      if (lam && std::all_of(lam->begin(), lam->end(), [](const Rational& x) { return x >= 0; })) return true;
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return false;
}

inline std::vector<RationalVector> to_rational(const std::vector<mqe::MultiIndex>& pts) {
  std::vector<RationalVector> out;
  for (const auto& p : pts) out.push_back(p.as_rational());
  return out;
}

// A point is extreme iff it is not in the hull of the others.
inline std::vector<mqe::MultiIndex> extreme_points(std::vector<mqe::MultiIndex> pts) {
  std::set<mqe::MultiIndex> uniq(pts.begin(), pts.end());
  pts.assign(uniq.begin(), uniq.end());
  std::vector<mqe::MultiIndex> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<mqe::MultiIndex> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (others.empty() || !in_hull(to_rational(others), pts[i].as_rational())) out.push_back(pts[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Plane {
  RationalVector normal;  // <normal, x> <= offset, offset in {0, 1}
  Rational offset;
  bool operator<(const Plane& o) const {
    if (offset != o.offset) return offset < o.offset;
    return normal < o.normal;
  }
  bool operator==(const Plane& o) const { return offset == o.offset && normal == o.normal; }
};

// Supporting hyperplanes through n affinely independent points with every
// point on one side. Requires a full-dimensional hull.
inline std::vector<Plane> facets(const std::vector<mqe::MultiIndex>& input) {
  std::set<mqe::MultiIndex> uniq(input.begin(), input.end());
  std::vector<mqe::MultiIndex> pts(uniq.begin(), uniq.end());
  const std::size_t n = pts.front().size(), m = pts.size();
  std::set<Plane> found;
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(n), true);
  do {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) idx.push_back(i);
    // hyperplane <a,x> = b through the chosen points: unknowns (a, b); fix
    // scale by trying b = 1 first, then b = 0 with a normalization row.
    for (int mode = 0; mode < 2; ++mode) {
      std::vector<RationalVector> M;
      RationalVector rhs;
      for (std::size_t c = 0; c < n; ++c) {
        M.push_back(pts[idx[c]].as_rational());
        rhs.push_back(mode == 0 ? 1 : 0);
      }
      std::optional<RationalVector> a;
      if (mode == 0) {
        a = solve_unique(M, rhs);
      } else {
        // b = 0: normal spans the null space of the point matrix when it is one-dimensional
        for (std::size_t fix = 0; fix < n && !a; ++fix) {
          auto M2 = M;
          auto r2 = rhs;
          RationalVector e(n, 0);
          e[fix] = 1;
          M2.push_back(e);
          r2.push_back(1);
          a = solve_unique(M2, r2);
        }
      }
      if (!a) continue;
      Rational offset = mode == 0 ? 1 : 0;
      int above = 0, below = 0;
      for (const auto& p : pts) {
        Rational v = mqe::dot(p.as_rational(), *a);
        if (v > offset) ++above;
        if (v < offset) ++below;
      }
      if (above && below) continue;
      Plane pl{*a, offset};
      if (above) {  // flip so the hull is on the <= side
        for (auto& x : pl.normal) x = -x;
        if (offset != 0) continue;  // 0 is in the hull, so b = 1 planes have 0 below
      }
      if (offset == 0) {
        // primitive integer scaling
        mqe::Integer l = 1;
        for (auto& x : pl.normal)
          if (x != 0) l = boost::multiprecision::lcm(l, mqe::Integer(denominator(x)));
        mqe::Integer g = 0;
        for (auto& x : pl.normal)
          if (x != 0) g = boost::multiprecision::gcd(g, mqe::Integer(abs(mqe::Integer(numerator(Rational(x * l))))));
        for (auto& x : pl.normal) x = x * l / g;
      }
      found.insert(pl);
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return {found.begin(), found.end()};
}

// inf{t > 0 : alpha/t in conv(pts)} by exact bisection, snapped to the
// simplest rational once the bracket is narrower than 1/(2 D^2).
inline Rational gauge_by_bisection(const std::vector<mqe::MultiIndex>& pts, const RationalVector& alpha,
                                   long max_denominator = 100000) {
  auto rpts = to_rational(pts);
  auto inside = [&](const Rational& t) {
    RationalVector p(alpha);
    for (auto& x : p) x /= t;
    return in_hull(rpts, p);
  };
  bool all_zero = std::all_of(alpha.begin(), alpha.end(), [](const Rational& x) { return x == 0; });
  if (all_zero) return 0;
  Rational hi = 1;
  while (!inside(hi)) hi *= 2;
  Rational lo = 0;
  const Rational width = Rational(1, 2 * max_denominator * max_denominator);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    if (inside(mid))
      hi = mid;
    else
      lo = mid;
  }
  return mqe::simplest_between(lo, hi);
}

}  // namespace oracle
