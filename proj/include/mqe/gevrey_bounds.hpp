#pragma once

#include <span>
#include <string>
#include <vector>

#include "mqe/newton_polyhedron.hpp"

namespace mqe {

/// Gevrey index s, coefficient class sigma and bound constant C.
struct GevreyParams {
  double s = 1.0;
  double sigma = 1.0;
  double C = 1.0;
};

/// Throws std::invalid_argument unless s > 0, sigma > 0 and C > 0.
void validate(const GevreyParams& p);

/// Which ordering of (s, sigma) the sufficiency and necessity theorems
/// assume: "sigma > s >= 1", "s > sigma >= 1", or neither.
std::string theorem_hypothesis(double s, double sigma);

/// log of C^{|alpha|+1} Gamma(mu k(alpha,F) + 1)^s.
double log_derivative_bound(const MultiIndex& alpha, const NewtonPolyhedron& F, const GevreyParams& p);
/// The bound itself; throws std::overflow_error when it leaves double range.
double derivative_bound(const MultiIndex& alpha, const NewtonPolyhedron& F, const GevreyParams& p);

/// log of C^{l+1} (l!)^{s mu}.
double log_iterate_bound(int l, double mu, const GevreyParams& p);
double iterate_bound(int l, double mu, const GevreyParams& p);

/// Gamma(a) a (a+1) ... (a+p-1) = Gamma(a+p).
double gamma_shift(double a, int p);
double log_gamma_shift(double a, int p);

/// Both sides of
///   lambda^a Gamma(b+c+1)^sigma tau^c
///     <= 2^{sigma/omega} [lambda^{a+c} Gamma(b+1)^sigma + Gamma(a+b+c+1)^sigma tau^{a+c}]
/// in log form. Domain: lambda, tau > 0; a, b, c >= omega > 0; sigma >= 1.
struct ConvexityCheck {
  double log_lhs;
  double log_rhs;
  bool holds() const { return log_lhs <= log_rhs; }
};
ConvexityCheck evaluate_convexity_inequality(double lambda, double tau, double a, double b, double c, double sigma,
                                             double omega);
bool check_convexity_inequality(double lambda, double tau, double a, double b, double c, double sigma, double omega);

/// Least C with gamma!/(beta!(gamma-beta)!) <= C^{<gamma-beta,q>}
/// Gamma(<gamma,q>+1)/(Gamma(<beta,q>+1) Gamma(<gamma-beta,q>+1)) over all
/// beta <= gamma with |gamma| <= search_bound. Never below 1 (beta = 0 forces it).
double binomial_gamma_constant(std::size_t n, const RationalVector& q, int search_bound);

struct GrowthFit {
  double C_fit = 0.0;
  double s_fit = 0.0;
  double residual = 0.0;  // RMS of the log-space residuals
  bool degenerate = false;
};

/// Least-squares fit of log norms_l ~ (l+1) log C + s mu log(l!).
GrowthFit fit_growth(std::span<const double> norms, double mu);
/// Same fit from precomputed logarithms.
GrowthFit fit_growth_log(std::span<const double> log_norms, double mu);

}  // namespace mqe
