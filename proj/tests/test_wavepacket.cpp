#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "mqe/quadrature.hpp"
#include "mqe/wavepacket.hpp"

using namespace mqe;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cd = std::complex<double>;

namespace {

SymbolSystem sys1(const std::string& text) { return SymbolSystem({parse_symbol(text, 2)}); }

WavepacketSpec demo_spec(const SymbolSystem& sys) {
  auto F = build_polyhedron(sys);
  Eigen::VectorXd xi0(2);
  xi0 << 1, 1;
  return make_wavepacket_spec(F, sys, F.facet_normals.front(), xi0, Rational(2), Rational(1));
}

// (1/eta) Gamma_upper((a+1)/eta, 1), log form.
double log_upper_gamma_oracle(double a, double eta) {
  const double x = (a + 1) / eta;
  return boost::math::lgamma(x) + std::log(boost::math::gamma_q(x, 1.0)) - std::log(eta);
}

// P(-i d) applied to Phi(x) = phi(r^{eps q}(x-x0)) e^{i<x-x0, r^q xi0>} by central
// differences, divided by the phase. Second-order symbols only.
cd fd_apply(const OperatorSymbol& P, const WavepacketSpec& spec, const BumpFunction& bump, Eigen::VectorXd x, double r,
            double h) {
  const double eps = to_double(spec.epsilon);
  auto Phi = [&](const Eigen::VectorXd& y) {
    std::vector<double> z(2);
    double phase = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double qj = to_double(spec.q[j]);
      z[j] = std::pow(r, eps * qj) * (y[j] - spec.x0[j]);
      phase += (y[j] - spec.x0[j]) * std::pow(r, qj) * spec.xi0[j];
    }
    return bump.value(z) * std::exp(cd(0, phase));
  };
  cd total = 0.0;
  for (const auto& [alpha, c] : P.terms()) {
    cd d;
    const Eigen::VectorXd e0 = Eigen::Vector2d(h, 0), e1 = Eigen::Vector2d(0, h);
    if (alpha.order() == 0) d = Phi(x);
    else if (alpha == MultiIndex{1, 0}) d = (Phi(x + e0) - Phi(x - e0)) / (2 * h);
    else if (alpha == MultiIndex{0, 1}) d = (Phi(x + e1) - Phi(x - e1)) / (2 * h);
    else if (alpha == MultiIndex{2, 0}) d = (Phi(x + e0) - 2.0 * Phi(x) + Phi(x - e0)) / (h * h);
    else if (alpha == MultiIndex{0, 2}) d = (Phi(x + e1) - 2.0 * Phi(x) + Phi(x - e1)) / (h * h);
    else if (alpha == MultiIndex{1, 1})
      d = (Phi(x + e0 + e1) - Phi(x + e0 - e1) - Phi(x - e0 + e1) + Phi(x - e0 - e1)) / (4 * h * h);
    else FAIL("unsupported term");
    total += c.to_complex() * std::pow(cd(0, -1), alpha.order()) * d;
  }
  double phase = 0.0;
  for (int j = 0; j < 2; ++j) phase += (x[j] - spec.x0[j]) * std::pow(r, to_double(spec.q[j])) * spec.xi0[j];
  return total * std::exp(cd(0, -phase));
}

}  // namespace

TEST_CASE("choose_parameters on the heat facet", "[wavepacket]") {
  auto sys = sys1("i*xi1 + xi2^2");
  auto F = build_polyhedron(sys);
  auto p = choose_parameters(Rational(2), Rational(1), F, sys, {Rational(1), Rational(1, 2)});
  CHECK(p.cap_sigma == Rational(2, 7));
  CHECK(p.cap_support == Rational(2));
  CHECK(p.epsilon == Rational(2, 7));
  CHECK(p.eta == Rational(3, 14));
  CHECK_THROWS(choose_parameters(Rational(1), Rational(1), F, sys, {Rational(1), Rational(1, 2)}));
  CHECK_THROWS(choose_parameters(Rational(2), Rational(1), F, sys, {Rational(1), Rational(1)}));
}

TEST_CASE("choose_parameters respects both caps", "[wavepacket][property]") {
  auto sys = SymbolSystem({parse_symbol("xi1^4 + xi1^2*xi2^4 + xi2^6 + xi1*xi2 + xi2^3", 2)});
  auto F = build_polyhedron(sys);
  REQUIRE(F.regular);
  const Rational mu = F.indices->mu;
  for (int sn = 2; sn <= 9; ++sn)
    for (int sd = 1; sd < sn; ++sd) {
      const Rational s(sn, sd + 0), sigma(1);
      if (!(s > sigma)) continue;
      for (const auto& q : F.facet_normals) {
        auto p = choose_parameters(s, sigma, F, sys, q);
        CHECK(p.epsilon > 0);
        CHECK(p.epsilon < Rational(1, 2));
        CHECK(p.epsilon <= mu * (s - sigma) / (2 * mu * s - sigma));
        for (const auto& beta : sys[0].support())
          if (dot(beta, q) < 1) CHECK(p.epsilon <= mu * (1 - dot(beta, q)));
        CHECK(1 / (mu * p.eta) > s);
      }
    }
}

TEST_CASE("spec constructor validation", "[wavepacket]") {
  auto sys = sys1("xi1^2 - xi2^2");
  auto F = build_polyhedron(sys);
  Eigen::VectorXd bad(2);
  bad << 1, 1e-4;
  CHECK_THROWS(make_wavepacket_spec(F, sys, F.facet_normals[0], bad, Rational(2), Rational(1)));
  Eigen::VectorXd good(2);
  good << 3, 4;
  auto spec = make_wavepacket_spec(F, sys, F.facet_normals[0], good, Rational(2), Rational(1));
  CHECK_THAT(spec.xi0[0], WithinAbs(0.6, 1e-15));
  CHECK_THAT(spec.xi0[1], WithinAbs(0.8, 1e-15));
  CHECK_THROWS(make_wavepacket_spec(F, sys, F.facet_normals[0], good, Rational(2), Rational(1), -1.0));
}

TEST_CASE("quadrature matches the incomplete gamma closed form", "[wavepacket][quadrature]") {
  for (double eta : {3.0 / 14, 0.5, 1.0, 2.0})
    for (double a : {0.0, 0.5, 1.0, 3.25, 10.0, 57.0, 400.0}) {
      const auto I = log_moment_integral(a, eta);
      CHECK_THAT(I.log_value, WithinAbs(log_upper_gamma_oracle(a, eta), 1e-9 * std::max(1.0, std::abs(I.log_value))));
    }
}

TEST_CASE("derivative_at_center against the closed form for |beta| <= 20", "[wavepacket]") {
  auto sys = sys1("i*xi1 + xi2^2");
  auto spec = demo_spec(sys);
  const double eta = to_double(spec.eta);
  auto d0 = derivative_at_center(spec, MultiIndex{0, 0});
  CHECK(d0.phase == cd(1.0, 0.0));
  CHECK_THAT(std::exp(d0.log_abs), WithinRel(std::exp(log_upper_gamma_oracle(0.0, eta)), 1e-10));
  for (int b1 = 0; b1 <= 20; ++b1)
    for (int b2 = 0; b1 + b2 <= 20; ++b2) {
      const MultiIndex beta{b1, b2};
      const double a = b1 + 0.5 * b2;
      const auto d = derivative_at_center(spec, beta);
      const double expected = log_upper_gamma_oracle(a, eta) + (b1 + b2) * std::log(std::sqrt(0.5));
      CHECK(std::abs(std::expm1(d.log_abs - expected)) < 1e-8);
      CHECK(std::abs(d.phase - std::pow(cd(0, 1), b1 + b2)) < 1e-15);
    }
}

TEST_CASE("center derivative signs follow xi0", "[wavepacket]") {
  auto sys = sys1("xi1^2 - xi2^2");
  auto F = build_polyhedron(sys);
  Eigen::VectorXd xi0(2);
  xi0 << 1, -1;
  auto spec = make_wavepacket_spec(F, sys, F.facet_normals[0], xi0, Rational(2), Rational(1));
  CHECK(derivative_at_center(spec, MultiIndex{0, 1}).phase == cd(0, -1));
  CHECK(derivative_at_center(spec, MultiIndex{1, 1}).phase == cd(1, 0));
}

TEST_CASE("lower bound for large m", "[wavepacket]") {
  auto sys = sys1("i*xi1 + xi2^2");
  auto spec = demo_spec(sys);
  std::vector<int> ms;
  for (int m = 1; m <= 40; ++m) ms.push_back(m);
  auto thr = lower_bound_threshold(spec, MultiIndex{0, 2}, ms);
  REQUIRE(thr.has_value());
  CHECK(*thr <= 40);
}

TEST_CASE("gevrey_violation_check on the heat demo", "[wavepacket]") {
  auto sys = sys1("i*xi1 + xi2^2");
  auto spec = demo_spec(sys);
  std::vector<int> ms;
  for (int m = 1; m <= 12; ++m) ms.push_back(m);
  auto rep = gevrey_violation_check(spec, MultiIndex{0, 2}, ms, 2.0, {1, 10, 100});
  REQUIRE(rep.per_C.size() == 3);
  CHECK_FALSE(rep.per_C[0].exceedance_orders.empty());
  CHECK_FALSE(rep.per_C[1].exceedance_orders.empty());
  // For C = 100 the crossing sits near m = 1e4, outside this sweep.
  CHECK(rep.per_C[2].exceedance_orders.empty());

  CHECK(gevrey_violation_check(spec, MultiIndex{0, 2}, {}, 2.0, {1, 10}).m.empty());
  CHECK_THROWS(gevrey_violation_check(spec, MultiIndex{0, 0}, ms, 2.0, {1}));
}

TEST_CASE("growth dichotomy over a long sparse sweep", "[wavepacket][property]") {
  auto sys = sys1("xi1^2 - xi2^2");
  auto spec = demo_spec(sys);
  std::vector<int> ms;
  for (int m = 1; m <= 30000; m = m < 50 ? m + 1 : m * 6 / 5) ms.push_back(m);
  const std::vector<double> Cs = {1, 10, 100};
  auto at_s = gevrey_violation_check(spec, MultiIndex{1, 1}, ms, 2.0, Cs);
  CHECK(at_s.violated_for_all_C());
  const double s_prime = 1.0 / to_double(spec.mu * spec.eta) + 0.1;
  auto at_sp = gevrey_violation_check(spec, MultiIndex{1, 1}, ms, s_prime, Cs);
  CHECK(at_sp.bounded_for_some_C());
  CHECK(at_sp.per_C[2].exceedance_orders.empty());
}

TEST_CASE("violation check requires a facet-attaining alpha", "[wavepacket]") {
  auto sys = SymbolSystem({parse_symbol("xi1^4 + xi1^2*xi2^4 + xi2^6", 2)});
  auto F = build_polyhedron(sys);
  const RationalVector q = {Rational(1, 6), Rational(1, 6)};
  Eigen::VectorXd xi0(2);
  xi0 << 1, 1;
  auto spec = make_wavepacket_spec(F, sys, q, xi0, Rational(2), Rational(1));
  // (1,0): gauge 1/4 from q = (1/4,1/8), but <(1,0), q> = 1/6.
  CHECK_THROWS(gevrey_violation_check(spec, MultiIndex{1, 0}, {1, 2}, 2.0, {1}));
  CHECK_NOTHROW(gevrey_violation_check(spec, MultiIndex{0, 1}, {1, 2}, 2.0, {1}));
}

TEST_CASE("iterate coefficients: base and one heat step", "[wavepacket]") {
  auto sys = sys1("i*xi1 + xi2^2");
  auto spec = demo_spec(sys);
  auto a0 = iterate_coefficients(spec, sys, {});
  REQUIRE(a0.c.size() == 1);
  CHECK(a0.c.begin()->first == MultiIndex{0, 0});
  CHECK(a0.c.begin()->second.terms().size() == 1);
  CHECK(a0.c.begin()->second.terms().at(Rational(0)) == cd(1.0, 0.0));

  auto a1 = iterate_coefficients(spec, sys, {0});
  CHECK(a1.level == 1);
  REQUIRE(a1.c.size() == 4);
  const double h = std::sqrt(0.5);
  auto coeff = [&](const MultiIndex& g, const Rational& e) { return a1.c.at(g).terms().at(e); };
  CHECK(std::abs(coeff({0, 0}, Rational(1)) - cd(0.5, h)) < 1e-15);
  CHECK(std::abs(coeff({1, 0}, Rational(2, 7)) - cd(1, 0)) < 1e-15);
  CHECK(std::abs(coeff({0, 1}, Rational(9, 14)) - cd(0, -2 * h)) < 1e-15);
  CHECK(std::abs(coeff({0, 2}, Rational(2, 7)) - cd(-1, 0)) < 1e-15);
  for (const auto& [g, c] : a1.c)
    for (const auto& [e, v] : c.terms()) CHECK(e >= 0);
}

TEST_CASE("iterate recursion is linear in the symbol", "[wavepacket][property]") {
  auto P = parse_symbol("i*xi1 + xi2^2", 2);
  auto Q = parse_symbol("3*xi1 - 2i*xi2 + 1/2*xi2^2 + 5", 2);
  auto sys = SymbolSystem({P, Q, P + Q});
  auto spec = demo_spec(SymbolSystem({P}));
  auto a = iterate_coefficients(spec, sys, {0});
  auto b = iterate_coefficients(spec, sys, {1});
  auto ab = iterate_coefficients(spec, sys, {2});
  std::map<MultiIndex, RPolynomial> sum = a.c;
  for (const auto& [g, c] : b.c) sum[g] += c;
  std::erase_if(sum, [](const auto& kv) { return kv.second.is_zero(); });
  REQUIRE(sum.size() == ab.c.size());
  for (const auto& [g, c] : ab.c)
    for (const auto& [e, v] : c.terms()) CHECK(std::abs(sum.at(g).terms().at(e) - v) < 1e-12);
}

TEST_CASE("recursion rejects support beyond the facet", "[wavepacket]") {
  auto sys = sys1("i*xi1 + xi2^2");
  auto spec = demo_spec(sys);
  auto bad = SymbolSystem({parse_symbol("xi1^2", 2)});
  CHECK_THROWS(iterate_coefficients(spec, bad, {0}));
  CHECK_THROWS(iterate_coefficients(spec, sys, {1}));
}

TEST_CASE("level-1 recursion against finite differences", "[wavepacket][property]") {
  for (const char* text : {"i*xi1 + xi2^2", "xi1^2 - xi2^2", "xi1^2 + 2*xi1*xi2 - 1/3i*xi2 + xi2^2 + 2"}) {
    auto sys = sys1(text);
    auto F = build_polyhedron(sys);
    REQUIRE(F.regular);
    Eigen::VectorXd xi0(2);
    xi0 << 0.6, -0.8;
    auto spec = make_wavepacket_spec(F, sys, F.facet_normals.front(), xi0, Rational(2), Rational(1), 0.5);
    auto bump = make_bump(2, 0.5, 4);
    auto a1 = iterate_coefficients(spec, sys, {0});
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    for (double r : {1.0, 2.5}) {
      for (int i = 0; i < 40; ++i) {
        Eigen::VectorXd x(2);
        x << u(rng), u(rng);
        const cd rec = evaluate_coefficients(a1, spec, bump, x, r);
        const cd fd1 = fd_apply(sys[0], spec, bump, x, r, 2e-3), fd2 = fd_apply(sys[0], spec, bump, x, r, 1e-3);
        const cd fd = (4.0 * fd2 - fd1) / 3.0;
        CHECK(std::abs(rec - fd) <= 1e-4 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("iterate norm estimate", "[wavepacket]") {
  auto sys = sys1("xi1^2 - xi2^2");
  auto spec = demo_spec(sys);
  auto bump = make_bump(2, 1.0, 8);
  auto a0 = iterate_coefficients(spec, sys, {});
  CHECK_THAT(iterate_norm_estimate(a0, spec, bump), WithinRel(std::exp(log_upper_gamma_oracle(0, 3.0 / 14)), 1e-9));

  auto twice = SymbolSystem({parse_symbol("2*xi1^2 - 2*xi2^2", 2)});
  const double one = iterate_norm_estimate(iterate_coefficients(spec, sys, {0}), spec, bump);
  const double two = iterate_norm_estimate(iterate_coefficients(spec, twice, {0}), spec, bump);
  CHECK(two <= 2 * one * (1 + 1e-9));
  CHECK(two >= one);

  auto a5 = iterate_coefficients(spec, sys, {0, 0, 0, 0, 0});
  CHECK(a5.max_order() == 10);
  CHECK_THROWS(iterate_norm_estimate(a5, spec, bump));

  double prev = 0.0;
  auto big = make_bump(2, 1.0, 24);
  for (int k = 0; k <= 4; ++k) {
    const double v = log_iterate_norm_estimate(iterate_coefficients(spec, sys, std::vector<std::size_t>(k, 0)), spec, big);
    CHECK(std::isfinite(v));
    if (k > 0) CHECK(v > prev);
    prev = v;
  }
}
