#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "mqe/bump.hpp"
#include "mqe/gevrey_bounds.hpp"
#include "mqe/newton_polyhedron.hpp"
#include "mqe/rpolynomial.hpp"

namespace mqe {

struct WavepacketParameters {
  Rational epsilon;
  Rational eta;
  Rational cap_sigma;    // mu (s - sigma) / (2 mu s - sigma)
  Rational cap_support;  // min of mu (1 - <beta,q>) over sub-facet support and 0
};

/// epsilon = min of both caps, eta = (1 - epsilon/mu) / (mu s).
/// Throws std::invalid_argument when s <= sigma or sigma < 1.
WavepacketParameters choose_parameters(const Rational& s, const Rational& sigma, const NewtonPolyhedron& F,
                                       const SymbolSystem& system, const RationalVector& q);

/// u(x) = int_1^inf phi(r^{eps q}(x - x0)) exp(i <x - x0, r^q xi0>) exp(-r^eta) dr.
struct WavepacketSpec {
  Eigen::VectorXd x0;
  RationalVector q;
  Eigen::VectorXd xi0;
  Rational s;
  Rational sigma;
  Rational epsilon;
  Rational eta;
  double delta = 1.0;
  Rational mu;
  NewtonPolyhedron F;

  std::size_t dim() const { return q.size(); }
};

/// Builds and validates a spec. xi0 is normalized; q must be a facet normal of
/// F and every |xi0_j| must be at least 1e-3.
WavepacketSpec make_wavepacket_spec(const NewtonPolyhedron& F, const SymbolSystem& system, const RationalVector& q,
                                    const Eigen::VectorXd& xi0, const Rational& s, const Rational& sigma,
                                    double delta = 1.0, std::optional<Eigen::VectorXd> x0 = std::nullopt);

/// D^beta u(x0) = i^{|beta|} xi0^beta int_1^inf r^{<beta,q>} exp(-r^eta) dr,
/// kept in polar form because the magnitude overflows quickly.
struct CenterDerivative {
  double log_abs = 0.0;
  std::complex<double> phase{1.0, 0.0};
  double rel_error = 0.0;
  std::complex<double> value() const { return phase * std::exp(log_abs); }
};
CenterDerivative derivative_at_center(const WavepacketSpec& spec, const MultiIndex& beta);

struct ExceedanceSeries {
  double C = 1.0;
  std::vector<double> log_bound;  // aligned with ViolationReport::m
  std::vector<int> exceedance_orders;
  std::optional<int> first_exceedance() const {
    if (exceedance_orders.empty()) return std::nullopt;
    return exceedance_orders.front();
  }
};

struct ViolationReport {
  MultiIndex alpha;
  double s_compare = 0.0;
  std::vector<int> m;
  std::vector<double> log_derivative;
  std::vector<ExceedanceSeries> per_C;
  /// Every C has an exceedance in the sweep.
  bool violated_for_all_C() const;
  /// Some C stays above the derivatives over the whole sweep.
  bool bounded_for_some_C() const;
};

/// Compares log|D^{m alpha} u(x0)| with log C^{|m alpha|+1} Gamma(mu k(m alpha) + 1)^{s_compare}.
/// alpha must be nonzero and attain its gauge on spec.q.
ViolationReport gevrey_violation_check(const WavepacketSpec& spec, const MultiIndex& alpha,
                                       const std::vector<int>& m_values, double s_compare,
                                       const std::vector<double>& C_values);

/// Smallest m in the sweep from which |D^{m beta}u(x0)| stays above
/// (1/(2 eta)) |xi0^{m beta}| Gamma((<m beta,q> + 1)/eta).
std::optional<int> lower_bound_threshold(const WavepacketSpec& spec, const MultiIndex& beta,
                                         const std::vector<int>& m_values);

/// A(x, r) = sum_gamma c_gamma(r) (d^gamma phi)(r^{eps q}(x - x0)).
struct ACoefficients {
  int level = 0;
  std::map<MultiIndex, RPolynomial> c;
  int max_order() const;
};

/// Applies P_{i_1}, ..., P_{i_k} (indices into system, in order) to phi.
ACoefficients iterate_coefficients(const WavepacketSpec& spec, const SymbolSystem& system,
                                   const std::vector<std::size_t>& sequence);
/// One more operator applied to existing coefficients.
ACoefficients apply_symbol(const WavepacketSpec& spec, const OperatorSymbol& P, const ACoefficients& a);

/// A(x, r) at one point.
std::complex<double> evaluate_coefficients(const ACoefficients& a, const WavepacketSpec& spec, const BumpFunction& bump,
                                           const Eigen::VectorXd& x, double r);

/// int_1^inf sum_gamma |c_gamma(r)| sup|d^gamma phi| exp(-r^eta) dr and its log.
double log_iterate_norm_estimate(const ACoefficients& a, const WavepacketSpec& spec, const BumpFunction& bump);
double iterate_norm_estimate(const ACoefficients& a, const WavepacketSpec& spec, const BumpFunction& bump);

}  // namespace mqe
