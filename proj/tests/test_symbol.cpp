#include <catch_amalgamated.hpp>

#include <random>

#include "mqe/rpolynomial.hpp"
#include "mqe/symbol.hpp"

using namespace mqe;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

OperatorSymbol random_symbol(std::mt19937_64& rng, std::size_t dim, int max_degree) {
  std::uniform_int_distribution<int> nterms(1, 6), coeff(-9, 9), den(1, 5), kind(0, 2);
  OperatorSymbol p(dim);
  const int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(dim, 0);
    int budget = std::uniform_int_distribution<int>(0, max_degree)(rng);
    for (int b = 0; b < budget; ++b) ++e[std::uniform_int_distribution<std::size_t>(0, dim - 1)(rng)];
    ExactComplex c;
    const int k = kind(rng);
    if (k != 1) c.re = Rational(coeff(rng), den(rng));
    if (k != 0) c.im = Rational(coeff(rng), den(rng));
    p.add_term(MultiIndex(e), c);
  }
  return p;
}

}  // namespace

TEST_CASE("parse_symbol reads the documented examples", "[symbol]") {
  auto lap = parse_symbol("xi1^2 + xi2^2", 2);
  CHECK(lap.terms().size() == 2);
  CHECK(lap.coefficient({2, 0}) == ExactComplex{1, 0});
  CHECK(lap.coefficient({0, 2}) == ExactComplex{1, 0});

  auto one = parse_symbol("1", 2);
  CHECK(one.terms().size() == 1);
  CHECK(one.coefficient({0, 0}) == ExactComplex{1, 0});

  auto heat = parse_symbol("i*xi1 + xi2^2", 2);
  CHECK(heat.coefficient({1, 0}) == ExactComplex{0, 1});
  CHECK(heat.coefficient({0, 2}) == ExactComplex{1, 0});
}

TEST_CASE("parse_symbol accepts literals, juxtaposition and combining terms", "[symbol]") {
  auto p = parse_symbol("-3/2i*xi1 xi2^3 + 0.5 - 1/2 + 2*xi1*xi2^3", 2);
  CHECK(p.coefficient({1, 3}) == ExactComplex{2, Rational(-3, 2)});
  CHECK(p.coefficient({0, 0}).is_zero());  // 0.5 - 1/2 cancels
  CHECK(p.terms().size() == 1);
  CHECK(parse_symbol("xi1 - xi1", 1).is_zero());
  CHECK(parse_symbol("xi1*xi1", 1) == parse_symbol("xi1^2", 1));
}

TEST_CASE("parse_symbol reports errors with positions", "[symbol]") {
  try {
    parse_symbol("xi1^2 + * xi2", 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 9);
  }
  CHECK_THROWS_AS(parse_symbol("xi1^99999999", 1), ParseError);
  CHECK_THROWS_AS(parse_symbol("xi1^600 * xi1^600", 1), ParseError);
  CHECK_THROWS_AS(parse_symbol("xi3", 2), DimensionError);
  CHECK_THROWS_AS(parse_symbol("", 2), ParseError);
  CHECK_THROWS_AS(parse_symbol("xi1 xi2 +", 2), ParseError);
  CHECK_THROWS_AS(parse_symbol("1/0", 1), ParseError);
  CHECK_THROWS_AS(parse_symbol("xi0", 1), ParseError);
}

TEST_CASE("parser/printer round trip on random canonical symbols", "[symbol][property]") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + trial % 4;
    auto p = random_symbol(rng, dim, 8);
    const std::string text = to_string(p);
    INFO(text);
    CHECK(parse_symbol(text, dim) == p);
  }
}

TEST_CASE("evaluate matches hand values", "[symbol]") {
  auto lap = parse_symbol("xi1^2 + xi2^2", 2);
  const double at12[] = {1.0, 2.0};
  CHECK(evaluate(lap, std::span<const double>(at12)) == std::complex<double>(5.0, 0.0));
  auto heat = parse_symbol("i*xi1 + xi2^2", 2);
  const double at32[] = {3.0, 2.0};
  CHECK(evaluate(heat, std::span<const double>(at32)) == std::complex<double>(4.0, 3.0));
  auto p = parse_symbol("7/2 + 3i*xi1*xi2 + xi2^5", 2);
  CHECK(evaluate(p, Eigen::Vector2d::Zero()) == std::complex<double>(3.5, 0.0));
  CHECK_THROWS_AS(evaluate(p, Eigen::Vector3d::Zero()), DimensionError);
}

TEST_CASE("xi_derivative examples", "[symbol]") {
  auto p = parse_symbol("xi1^2*xi2", 2);
  CHECK(xi_derivative(p, {1, 0}) == parse_symbol("2*xi1*xi2", 2));
  CHECK(xi_derivative(p, {0, 0}) == p);
  CHECK(xi_derivative(parse_symbol("xi1^2", 2), {3, 0}).is_zero());
  CHECK(xi_derivative(parse_symbol("xi1^4 xi2^3", 2), {2, 2}) == parse_symbol("72*xi1^2*xi2", 2));
}

TEST_CASE("Leibniz rule for first-order derivatives", "[symbol][property]") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    auto p = random_symbol(rng, dim, 5);
    auto q = random_symbol(rng, dim, 5);
    for (std::size_t j = 0; j < dim; ++j) {
      auto e = MultiIndex::unit(dim, j);
      CHECK(xi_derivative(p * q, e) == xi_derivative(p, e) * q + p * xi_derivative(q, e));
    }
  }
}

TEST_CASE("xi_derivative agrees with central finite differences", "[symbol][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 3;
    auto p = random_symbol(rng, dim, 6);
    Eigen::VectorXd xi(dim);
    for (std::size_t j = 0; j < dim; ++j) xi[j] = u(rng);
    for (std::size_t j = 0; j < dim; ++j) {
      const double h = 1e-5;
      Eigen::VectorXd a = xi, b = xi;
      a[j] += h;
      b[j] -= h;
      std::complex<double> fd = (evaluate(p, a) - evaluate(p, b)) / (2 * h);
      std::complex<double> exact = evaluate(xi_derivative(p, MultiIndex::unit(dim, j)), xi);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("parse_system handles comments and dimension directives", "[symbol]") {
  auto sys = parse_system("# heat operator\n# dim: 3\n\ni*xi1 + xi2^2\nxi3^2\n");
  CHECK(sys.dim() == 3);
  CHECK(sys.size() == 2);
  CHECK(parse_system("xi1^2\n").dim() == 1);
  CHECK(parse_system("xi1^2\n", 2).dim() == 2);
  try {
    parse_system("xi1^2\nxi2^^2\n");
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_system("# only a comment\n"), ParseError);
}

TEST_CASE("rpoly_eval examples", "[rpolynomial]") {
  RPolynomial c;
  c.add_term(Rational(1), 2.0);
  c.add_term(Rational(1, 2), 1.0);
  CHECK_THAT(rpoly_eval(c, 4.0).real(), WithinRel(10.0, 1e-15));
  CHECK(rpoly_eval(RPolynomial{}, 3.0) == 0.0);
  CHECK(rpoly_eval(RPolynomial::constant({2.0, -1.0}), 17.0) == std::complex<double>(2.0, -1.0));
  auto sq = c * c;  // 4 r^2 + 4 r^{3/2} + r
  CHECK(sq.size() == 3);
  CHECK_THAT(rpoly_eval(sq, 4.0).real(), WithinRel(100.0, 1e-14));
  CHECK((c + c.scaled(-1.0)).is_zero());
  CHECK_THROWS(c.add_term(Rational(-1), 1.0));
}
