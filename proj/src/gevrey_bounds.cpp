#include "mqe/gevrey_bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace mqe {

void validate(const GevreyParams& p) {
  if (!(p.s > 0)) throw std::invalid_argument("Gevrey index s must be positive");
  if (!(p.sigma > 0)) throw std::invalid_argument("coefficient index sigma must be positive");
  if (!(p.C > 0)) throw std::invalid_argument("bound constant C must be positive");
}

std::string theorem_hypothesis(double s, double sigma) {
  if (sigma > s && s >= 1) return "sigma > s >= 1";
  if (s > sigma && sigma >= 1) return "s > sigma >= 1";
  return "neither";
}

double log_derivative_bound(const MultiIndex& alpha, const NewtonPolyhedron& F, const GevreyParams& p) {
  validate(p);
  if (!F.regular) throw std::invalid_argument("derivative_bound: polyhedron is not regular");
  const double mu = to_double(F.indices->mu);
  const double k = to_double(k_of(F, alpha));
  return (alpha.order() + 1) * std::log(p.C) + p.s * std::lgamma(mu * k + 1.0);
}

namespace {

double checked_exp(double log_value, const char* what) {
  if (log_value > std::log(std::numeric_limits<double>::max()))
    throw std::overflow_error(std::string(what) + " exceeds double range; use the log form");
  return std::exp(log_value);
}

}  // namespace

double derivative_bound(const MultiIndex& alpha, const NewtonPolyhedron& F, const GevreyParams& p) {
  return checked_exp(log_derivative_bound(alpha, F, p), "derivative bound");
}

double log_iterate_bound(int l, double mu, const GevreyParams& p) {
  validate(p);
  if (l < 0) throw std::invalid_argument("iterate_bound: l must be non-negative");
  return (l + 1) * std::log(p.C) + p.s * mu * std::lgamma(l + 1.0);
}

double iterate_bound(int l, double mu, const GevreyParams& p) {
  return checked_exp(log_iterate_bound(l, mu, p), "iterate bound");
}

double gamma_shift(double a, int p) {
  if (!(a > 0)) throw std::invalid_argument("gamma_shift: a must be positive");
  if (p < 0) throw std::invalid_argument("gamma_shift: p must be non-negative");
  double v = std::tgamma(a);
  for (int i = 0; i < p; ++i) v *= a + i;
  return v;
}

double log_gamma_shift(double a, int p) {
  if (!(a > 0)) throw std::invalid_argument("gamma_shift: a must be positive");
  double v = std::lgamma(a);
  for (int i = 0; i < p; ++i) v += std::log(a + i);
  return v;
}

ConvexityCheck evaluate_convexity_inequality(double lambda, double tau, double a, double b, double c, double sigma,
                                             double omega) {
  if (!(lambda > 0) || !(tau > 0)) throw std::domain_error("convexity inequality: lambda and tau must be positive");
  if (!(omega > 0)) throw std::domain_error("convexity inequality: omega must be positive");
  if (a < omega || b < omega || c < omega) throw std::domain_error("convexity inequality: a, b, c must be >= omega");
  if (sigma < 1) throw std::domain_error("convexity inequality: sigma must be >= 1");
  const double ll = std::log(lambda), lt = std::log(tau);
  ConvexityCheck out;
  out.log_lhs = a * ll + sigma * std::lgamma(b + c + 1) + c * lt;
  const double t1 = (a + c) * ll + sigma * std::lgamma(b + 1);
  const double t2 = sigma * std::lgamma(a + b + c + 1) + (a + c) * lt;
  const double m = std::max(t1, t2);
  out.log_rhs = sigma / omega * std::log(2.0) + m + std::log1p(std::exp(std::min(t1, t2) - m));
  return out;
}

bool check_convexity_inequality(double lambda, double tau, double a, double b, double c, double sigma, double omega) {
  return evaluate_convexity_inequality(lambda, tau, a, b, c, sigma, omega).holds();
}

namespace {

// Calls f(gamma) for every gamma in N^n with |gamma| <= bound.
template <class F>
void for_each_index(std::size_t n, int bound, F&& f) {
  std::vector<int> g(n, 0);
  while (true) {
    f(MultiIndex(g));
    std::size_t j = 0;
    while (j < n) {
      ++g[j];
      int total = 0;
      for (int x : g) total += x;
      if (total <= bound) break;
      g[j] = 0;
      ++j;
    }
    if (j == n) return;
  }
}

double log_binomial(const MultiIndex& gamma, const MultiIndex& beta) {
  double v = 0;
  for (std::size_t j = 0; j < gamma.size(); ++j)
    v += std::lgamma(gamma[j] + 1.0) - std::lgamma(beta[j] + 1.0) - std::lgamma(gamma[j] - beta[j] + 1.0);
  return v;
}

}  // namespace

double binomial_gamma_constant(std::size_t n, const RationalVector& q, int search_bound) {
  if (q.size() != n) throw DimensionError("binomial_gamma_constant: q has wrong dimension");
  for (const auto& x : q)
    if (x <= 0) throw std::invalid_argument("binomial_gamma_constant: q must be strictly positive");
  double log_c = 0.0;
  for_each_index(n, search_bound, [&](const MultiIndex& gamma) {
    const double g = to_double(dot(gamma, q));
    for_each_index(n, gamma.order(), [&](const MultiIndex& beta) {
      if (!beta.divides(gamma) || beta == gamma) return;
      const double b = to_double(dot(beta, q));
      const double c = g - b;
      const double gamma_ratio = std::lgamma(g + 1) - std::lgamma(b + 1) - std::lgamma(c + 1);
      log_c = std::max(log_c, (log_binomial(gamma, beta) - gamma_ratio) / c);
    });
  });
  return std::exp(log_c);
}

GrowthFit fit_growth_log(std::span<const double> log_norms, double mu) {
  if (log_norms.size() < 4) throw std::invalid_argument("fit_growth: need at least 4 entries");
  GrowthFit fit;
  const auto n = static_cast<Eigen::Index>(log_norms.size());
  Eigen::VectorXd y(n);
  for (Eigen::Index l = 0; l < n; ++l) {
    if (!std::isfinite(log_norms[static_cast<std::size_t>(l)]))
      throw std::invalid_argument("fit_growth: norms must be positive and finite");
    y[l] = log_norms[static_cast<std::size_t>(l)];
  }
  if ((y.array() - y[0]).abs().maxCoeff() <= 1e-12 * std::max(1.0, std::abs(y[0]))) {
    fit.degenerate = true;
    fit.s_fit = 0.0;
    fit.C_fit = std::exp(y[0]);
    return fit;
  }
  Eigen::MatrixXd A(n, 2);
  for (Eigen::Index l = 0; l < n; ++l) {
    A(l, 0) = static_cast<double>(l + 1);
    A(l, 1) = mu * std::lgamma(static_cast<double>(l) + 1.0);
  }
  Eigen::Vector2d x = A.colPivHouseholderQr().solve(y);
  fit.C_fit = std::exp(x[0]);
  fit.s_fit = x[1];
  fit.residual = std::sqrt((A * x - y).squaredNorm() / static_cast<double>(n));
  return fit;
}

GrowthFit fit_growth(std::span<const double> norms, double mu) {
  std::vector<double> logs;
  logs.reserve(norms.size());
  for (double v : norms) {
    if (!(v > 0)) throw std::invalid_argument("fit_growth: norms must be positive");
    logs.push_back(std::log(v));
  }
  return fit_growth_log(logs, mu);
}

}  // namespace mqe
