#include <catch_amalgamated.hpp>

#include <random>

#include "mqe/newton_polyhedron.hpp"
#include "mqe/oracles.hpp"

using namespace mqe;

namespace {

NewtonPolyhedron poly_of(const std::string& text, std::size_t dim) {
  return build_polyhedron(SymbolSystem({parse_symbol(text, dim)}));
}

RationalVector rv(std::initializer_list<Rational> v) { return RationalVector(v); }

std::vector<MultiIndex> random_support(std::mt19937_64& rng, std::size_t dim, std::size_t max_points, int max_exp) {
  std::uniform_int_distribution<std::size_t> count(1, max_points);
  std::uniform_int_distribution<int> e(0, max_exp);
  std::vector<MultiIndex> pts;
  const std::size_t k = count(rng);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> v(dim);
    for (auto& x : v) x = e(rng);
    pts.emplace_back(v);
  }
  return pts;
}

}  // namespace

TEST_CASE("Laplacian polyhedron", "[polyhedron]") {
  auto F = poly_of("xi1^2 + xi2^2", 2);
  REQUIRE(F.regular);
  CHECK(F.vertices == std::vector<MultiIndex>{{0, 0}, {2, 0}, {0, 2}});
  CHECK(F.facet_normals == std::vector<RationalVector>{rv({Rational(1, 2), Rational(1, 2)})});
  const auto& ix = *F.indices;
  CHECK(ix.mu_per_axis == rv({2, 2}));
  CHECK(ix.mu == 2);
  CHECK(ix.theta == rv({1, 1}));
  CHECK(ix.sobolev_index == 1);
}

TEST_CASE("heat polyhedron", "[polyhedron]") {
  auto F = poly_of("i*xi1 + xi2^2", 2);
  REQUIRE(F.regular);
  CHECK(F.vertices == std::vector<MultiIndex>{{0, 0}, {1, 0}, {0, 2}});
  CHECK(F.facet_normals == std::vector<RationalVector>{rv({1, Rational(1, 2)})});
  const auto& ix = *F.indices;
  CHECK(ix.mu_per_axis == rv({1, 2}));
  CHECK(ix.mu == 2);
  CHECK(ix.theta == rv({2, 1}));
  CHECK(ix.sobolev_index == Rational(3, 2));
}

TEST_CASE("multi-quasi-homogeneous polyhedron with two facets", "[polyhedron]") {
  auto F = poly_of("xi1^4 + xi1^2*xi2^4 + xi2^6", 2);
  REQUIRE(F.regular);
  CHECK(F.vertices == std::vector<MultiIndex>{{0, 0}, {4, 0}, {2, 4}, {0, 6}});
  CHECK(F.facet_normals ==
        std::vector<RationalVector>{rv({Rational(1, 6), Rational(1, 6)}), rv({Rational(1, 4), Rational(1, 8)})});
  const auto& ix = *F.indices;
  CHECK(ix.mu_per_axis == rv({6, 8}));
  CHECK(ix.mu == 8);
  CHECK(ix.theta == rv({Rational(4, 3), 1}));
  CHECK(ix.sobolev_index == Rational(3, 8));
}

TEST_CASE("irregular and degenerate polyhedra", "[polyhedron]") {
  auto line = poly_of("xi1^2", 2);
  CHECK_FALSE(line.regular);
  CHECK_FALSE(is_regular(line).regular);
  CHECK(line.affine_dim == 1);
  CHECK(line.vertices == std::vector<MultiIndex>{{0, 0}, {2, 0}});
  CHECK(is_regular(line).diagnostic.find("affine dimension") != std::string::npos);

  auto constant = poly_of("1", 2);
  CHECK(constant.degenerate);
  CHECK_FALSE(constant.regular);
  CHECK(constant.vertices == std::vector<MultiIndex>{{0, 0}});

  // facet through the origin that is not a coordinate hyperplane
  auto skew = poly_of("xi1^2 + xi1*xi2", 2);
  CHECK_FALSE(skew.regular);
  CHECK(skew.diagnostic.find("origin") != std::string::npos);

  // square: facet alpha_1 = 2 has normal (1/2, 0)
  auto square = poly_of("xi1^2 + xi2^2 + xi1^2*xi2^2", 2);
  CHECK_FALSE(square.regular);
  CHECK(square.diagnostic.find("non-positive") != std::string::npos);
  CHECK_THROWS(k_of(square, MultiIndex{1, 1}));

  CHECK_THROWS_AS(build_polyhedron(0, {}), DimensionError);
}

TEST_CASE("k_of examples", "[polyhedron]") {
  auto lap = poly_of("xi1^2 + xi2^2", 2);
  CHECK(k_of(lap, MultiIndex{2, 0}) == 1);
  CHECK(k_of(lap, MultiIndex{1, 1}) == 1);
  CHECK(oracle::gauge_by_bisection(oracle::extreme_points({{0, 0}, {2, 0}, {0, 2}}), rv({1, 1})) == 1);
  auto heat = poly_of("i*xi1 + xi2^2", 2);
  CHECK(k_of(heat, MultiIndex{0, 1}) == Rational(1, 2));
  CHECK(oracle::gauge_by_bisection({{0, 0}, {1, 0}, {0, 2}}, rv({0, 1})) == Rational(1, 2));
}

TEST_CASE("weight_V examples", "[polyhedron]") {
  auto lap = poly_of("xi1^2 + xi2^2", 2);
  CHECK(weight_V(lap, Eigen::Vector2d(1, 2)) == 6.0);
  CHECK(weight_V(lap, Eigen::Vector2d(0, 0)) == 1.0);
  auto heat = poly_of("i*xi1 + xi2^2", 2);
  CHECK(weight_V(heat, Eigen::Vector2d(2, 3)) == 12.0);
  CHECK_THROWS_AS(weight_V(heat, Eigen::Vector3d(2, 3, 1)), DimensionError);
}

TEST_CASE("hull agrees with brute-force oracle on random supports", "[polyhedron][property]") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t dim = 2 + trial % 2;
    auto support = random_support(rng, dim, 8, 10);
    auto F = build_polyhedron(dim, support);
    auto pts = support;
    pts.push_back(MultiIndex::zero(dim));
    CHECK(F.vertices == oracle::extreme_points(pts));
    if (F.affine_dim == dim) {
      auto ref = oracle::facets(pts);
      std::vector<oracle::Plane> got;
      for (const auto& h : F.hull_facets) got.push_back({h.normal, h.offset});
      std::sort(got.begin(), got.end());
      CHECK(got == ref);
    }
  }
}

TEST_CASE("regular polyhedron invariants", "[polyhedron][property]") {
  std::mt19937_64 rng(99);
  int regular_seen = 0;
  for (int trial = 0; trial < 1000 && regular_seen < 40; ++trial) {
    const std::size_t dim = 2 + trial % 2;
    auto support = random_support(rng, dim, 6, 8);
    for (std::size_t j = 0; j < dim; ++j) {  // make regularity likely
      std::vector<int> e(dim, 0);
      e[j] = 1 + static_cast<int>(rng() % 8);
      support.emplace_back(e);
    }
    auto F = build_polyhedron(dim, support);
    if (!F.regular) continue;
    ++regular_seen;
    for (const auto& q : F.facet_normals) {
      Rational best = 0;
      int attained = 0;
      for (const auto& v : F.vertices) {
        Rational t = dot(v, q);
        if (t > best) best = t, attained = 0;
        if (t == best) ++attained;
      }
      CHECK(best == 1);
      if (dim == 2) CHECK(attained >= 2);
    }
    const auto& ix = *F.indices;
    Rational min_theta = ix.theta.front();
    for (const auto& t : ix.theta) {
      CHECK(t >= 1);
      min_theta = std::min(min_theta, t);
    }
    CHECK(min_theta == 1);
    // scaling and monotonicity of the gauge
    std::uniform_int_distribution<int> num(0, 12), den(1, 5);
    for (int s = 0; s < 10; ++s) {
      RationalVector a(dim), b(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        a[j] = Rational(num(rng), den(rng));
        b[j] = a[j] + Rational(num(rng), den(rng));
      }
      Rational lambda(num(rng) + 1, den(rng));
      RationalVector la = a;
      for (auto& x : la) x *= lambda;
      CHECK(k_of(F, la) == lambda * k_of(F, a));
      CHECK(k_of(F, a) <= k_of(F, b));
    }
  }
  CHECK(regular_seen >= 20);
}
