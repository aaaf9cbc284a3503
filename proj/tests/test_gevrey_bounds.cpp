#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mqe/gevrey_bounds.hpp"

using namespace mqe;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

NewtonPolyhedron poly_of(const std::string& text) { return build_polyhedron(SymbolSystem({parse_symbol(text, 2)})); }

}  // namespace

TEST_CASE("derivative_bound examples", "[gevrey]") {
  auto lap = poly_of("xi1^2 + xi2^2");
  auto heat = poly_of("i*xi1 + xi2^2");
  CHECK_THAT(derivative_bound(MultiIndex{0, 0}, lap, {1.0, 1.0, 3.5}), WithinRel(3.5, 1e-14));
  CHECK_THAT(derivative_bound(MultiIndex{2, 0}, lap, {1.0, 1.0, 1.0}), WithinRel(2.0, 1e-14));
  CHECK_THAT(derivative_bound(MultiIndex{0, 2}, heat, {2.0, 1.0, 1.0}), WithinRel(4.0, 1e-14));
  CHECK_THROWS_AS(derivative_bound(MultiIndex{400, 400}, lap, {3.0, 1.0, 10.0}), std::overflow_error);
  CHECK(std::isfinite(log_derivative_bound(MultiIndex{400, 400}, lap, {3.0, 1.0, 10.0})));
  CHECK_THROWS(derivative_bound(MultiIndex{1, 0}, poly_of("xi1^2"), {1.0, 1.0, 1.0}));
  CHECK_THROWS(derivative_bound(MultiIndex{1, 0}, lap, {1.0, 1.0, 0.0}));
}

TEST_CASE("derivative_bound is log-convex along rays", "[gevrey][property]") {
  auto F = poly_of("xi1^4 + xi1^2*xi2^4 + xi2^6");
  const GevreyParams p{1.5, 1.0, 2.0};
  for (const MultiIndex& ray : {MultiIndex{1, 0}, MultiIndex{0, 1}, MultiIndex{1, 1}, MultiIndex{2, 3}}) {
    double prev_diff = -INFINITY;
    for (int m = 1; m < 40; ++m) {
      const double diff = log_derivative_bound(ray.scaled(m + 1), F, p) - log_derivative_bound(ray.scaled(m), F, p);
      CHECK(diff >= prev_diff - 1e-9);
      prev_diff = diff;
    }
  }
}

TEST_CASE("iterate_bound examples and ratio law", "[gevrey]") {
  CHECK_THAT(iterate_bound(0, 2.0, {1.0, 1.0, 7.0}), WithinRel(7.0, 1e-14));
  CHECK_THAT(iterate_bound(3, 2.0, {1.0, 1.0, 1.0}), WithinRel(36.0, 1e-14));
  CHECK_THAT(iterate_bound(2, 2.0, {2.0, 1.0, 3.0}), WithinRel(432.0, 1e-13));
  const GevreyParams p{1.7, 1.0, 2.5};
  const double mu = 8.0 / 3.0;
  for (int l = 0; l < 200; ++l) {
    const double d = log_iterate_bound(l + 1, mu, p) - log_iterate_bound(l, mu, p);
    CHECK_THAT(d, WithinRel(std::log(p.C) + p.s * mu * std::log(l + 1.0), 1e-12));
  }
}

TEST_CASE("gamma_shift", "[gevrey]") {
  CHECK_THAT(gamma_shift(1.0, 3), WithinRel(6.0, 1e-15));
  CHECK_THAT(gamma_shift(0.5, 1), WithinRel(std::sqrt(M_PI) / 2, 1e-15));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(1e-3, 20.0);
  std::uniform_int_distribution<int> up(1, 30);
  for (int i = 0; i < 1000; ++i) {
    const double a = ua(rng);
    const int p = up(rng);
    CHECK_THAT(gamma_shift(a, p), WithinRel(std::tgamma(a + p), 1e-12));
    CHECK_THAT(log_gamma_shift(a, p), WithinAbs(std::lgamma(a + p), 1e-12 * std::max(1.0, std::lgamma(a + p))));
  }
  CHECK_THROWS(gamma_shift(0.0, 1));
}

TEST_CASE("convexity inequality", "[gevrey]") {
  CHECK(check_convexity_inequality(1, 1, 1, 1, 1, 1, 1));
  auto ex = evaluate_convexity_inequality(1, 1, 1, 1, 1, 1, 1);
  CHECK_THAT(ex.log_lhs, WithinAbs(std::log(2.0), 1e-14));
  CHECK_THAT(ex.log_rhs, WithinAbs(std::log(14.0), 1e-14));
  CHECK_THROWS_AS(check_convexity_inequality(1, 1, 0.5, 1, 1, 1, 1), std::domain_error);
  CHECK_THROWS_AS(check_convexity_inequality(-1, 1, 1, 1, 1, 1, 1), std::domain_error);
  CHECK_THROWS_AS(check_convexity_inequality(1, 1, 1, 1, 1, 0.5, 1), std::domain_error);

  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const double omega = 0.01 + 1.5 * u01(rng);
    const double a = omega + 20 * u01(rng), b = omega + 20 * u01(rng), c = omega + 20 * u01(rng);
    const double sigma = 1 + 5 * u01(rng);
    const double lambda = std::exp(30 * u01(rng) - 15), tau = std::exp(30 * u01(rng) - 15);
    if (!check_convexity_inequality(lambda, tau, a, b, c, sigma, omega)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("binomial_gamma_constant", "[gevrey]") {
  CHECK_THAT(binomial_gamma_constant(1, {Rational(1)}, 20), WithinAbs(1.0, 1e-12));
  CHECK_THAT(binomial_gamma_constant(2, {Rational(1), Rational(1)}, 12), WithinAbs(1.0, 1e-12));
  const double c = binomial_gamma_constant(2, {Rational(1), Rational(1, 2)}, 12);
  CHECK(std::isfinite(c));
  CHECK(c >= 1.0);
  double prev = 1.0;
  for (int bound = 1; bound <= 12; ++bound) {
    const double v = binomial_gamma_constant(2, {Rational(1), Rational(1, 2)}, bound);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(prev == c);
}

TEST_CASE("fit_growth inverts the iterate bound", "[gevrey]") {
  std::vector<double> a, b, flat(6, 5.0);
  for (int l = 0; l < 10; ++l) {
    const double f = std::tgamma(l + 1.0);
    a.push_back(f * f);
    b.push_back(std::pow(3.0, l + 1) * std::pow(f, 4));
  }
  auto fa = fit_growth(a, 2.0);
  CHECK_THAT(fa.s_fit, WithinAbs(1.0, 1e-6));
  CHECK_THAT(fa.C_fit, WithinAbs(1.0, 1e-6));
  auto fb = fit_growth(b, 2.0);
  CHECK_THAT(fb.s_fit, WithinAbs(2.0, 1e-6));
  CHECK_THAT(fb.C_fit, WithinAbs(3.0, 1e-6));
  auto ff = fit_growth(flat, 2.0);
  CHECK(ff.degenerate);
  CHECK(ff.s_fit == 0.0);
  CHECK_THROWS(fit_growth(std::vector<double>{1, 2, 3}, 2.0));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uc(0.5, 5.0), us(0.5, 3.0), um(1.0, 6.0);
  for (int t = 0; t < 50; ++t) {
    const GevreyParams p{us(rng), 1.0, uc(rng)};
    const double mu = um(rng);
    std::vector<double> logs;
    for (int l = 0; l < 12; ++l) logs.push_back(log_iterate_bound(l, mu, p));
    auto fit = fit_growth_log(logs, mu);
    CHECK_THAT(fit.s_fit, WithinAbs(p.s, 1e-6));
    CHECK_THAT(fit.C_fit, WithinRel(p.C, 1e-6));
  }
}

TEST_CASE("theorem hypothesis classification", "[gevrey]") {
  CHECK(theorem_hypothesis(1.5, 2.0) == "sigma > s >= 1");
  CHECK(theorem_hypothesis(2.0, 1.0) == "s > sigma >= 1");
  CHECK(theorem_hypothesis(0.5, 1.0) == "neither");
}
