#include "mqe/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "mqe/quadrature.hpp"

namespace mqe {

namespace {

std::complex<double> i_power(int k) {
  static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

double xi0_log_abs(const WavepacketSpec& spec, const MultiIndex& beta) {
  double v = 0.0;
  for (std::size_t j = 0; j < beta.size(); ++j)
    if (beta[j] != 0) v += beta[j] * std::log(std::abs(spec.xi0[static_cast<Eigen::Index>(j)]));
  return v;
}

double xi0_sign(const WavepacketSpec& spec, const MultiIndex& beta) {
  int neg = 0;
  for (std::size_t j = 0; j < beta.size(); ++j)
    if (spec.xi0[static_cast<Eigen::Index>(j)] < 0) neg += beta[j];
  return neg % 2 ? -1.0 : 1.0;
}

bool has_facet(const NewtonPolyhedron& F, const RationalVector& q) {
  return std::find(F.facet_normals.begin(), F.facet_normals.end(), q) != F.facet_normals.end();
}

// All alpha dividing at least one support element.
std::set<MultiIndex> derivative_indices(const OperatorSymbol& P) {
  std::set<MultiIndex> out;
  for (const auto& beta : P.support()) {
    std::vector<int> a(beta.size(), 0);
    while (true) {
      out.insert(MultiIndex(a));
      std::size_t j = 0;
      while (j < a.size() && ++a[j] > beta[j]) a[j++] = 0;
      if (j == a.size()) break;
    }
  }
  return out;
}

}  // namespace

WavepacketParameters choose_parameters(const Rational& s, const Rational& sigma, const NewtonPolyhedron& F,
                                       const SymbolSystem& system, const RationalVector& q) {
  if (!(s > sigma)) throw std::invalid_argument("choose_parameters: the construction needs s > sigma");
  if (sigma < 1) throw std::invalid_argument("choose_parameters: sigma must be at least 1");
  if (!F.regular || !F.indices) throw std::invalid_argument("choose_parameters: polyhedron is not regular");
  if (!has_facet(F, q)) throw std::invalid_argument("choose_parameters: q is not a facet normal of F");
  const Rational mu = F.indices->mu;

  WavepacketParameters p;
  p.cap_sigma = mu * (s - sigma) / (2 * mu * s - sigma);
  p.cap_support = mu;  // beta = 0
  for (const auto& P : system)
    for (const auto& beta : P.support()) {
      const Rational d = dot(beta, q);
      if (d < 1) p.cap_support = std::min(p.cap_support, Rational(mu * (1 - d)));
    }
  p.epsilon = std::min(p.cap_sigma, p.cap_support);
  p.eta = (1 - p.epsilon / mu) / (mu * s);
  if (!(1 / (mu * p.eta) > s)) throw std::logic_error("choose_parameters: 1/(mu eta) > s failed");
  return p;
}

WavepacketSpec make_wavepacket_spec(const NewtonPolyhedron& F, const SymbolSystem& system, const RationalVector& q,
                                    const Eigen::VectorXd& xi0, const Rational& s, const Rational& sigma, double delta,
                                    std::optional<Eigen::VectorXd> x0) {
  const std::size_t n = F.dim;
  if (q.size() != n || static_cast<std::size_t>(xi0.size()) != n || system.dim() != n)
    throw DimensionError("wavepacket spec: dimension mismatch");
  if (x0 && static_cast<std::size_t>(x0->size()) != n) throw DimensionError("wavepacket spec: x0 has wrong dimension");
  if (!(delta > 0.0)) throw std::invalid_argument("wavepacket spec: delta must be positive");
  const double norm = xi0.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("wavepacket spec: xi0 must be nonzero");

  const WavepacketParameters p = choose_parameters(s, sigma, F, system, q);
  WavepacketSpec spec;
  spec.q = q;
  spec.xi0 = xi0 / norm;
  if (spec.xi0.cwiseAbs().minCoeff() < 1e-3)
    throw std::invalid_argument("wavepacket spec: witness has a component below 1e-3; ask for a better-conditioned one");
  spec.x0 = x0 ? *x0 : Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  spec.s = s;
  spec.sigma = sigma;
  spec.epsilon = p.epsilon;
  spec.eta = p.eta;
  spec.delta = delta;
  spec.mu = F.indices->mu;
  spec.F = F;
  return spec;
}

CenterDerivative derivative_at_center(const WavepacketSpec& spec, const MultiIndex& beta) {
  if (beta.size() != spec.dim()) throw DimensionError("derivative_at_center: beta has wrong dimension");
  const LogIntegral I = log_moment_integral(to_double(dot(beta, spec.q)), to_double(spec.eta));
  CenterDerivative d;
  d.log_abs = I.log_value + xi0_log_abs(spec, beta);
  d.phase = i_power(beta.order()) * xi0_sign(spec, beta);
  d.rel_error = I.rel_error;
  return d;
}

bool ViolationReport::violated_for_all_C() const {
  return !per_C.empty() &&
         std::all_of(per_C.begin(), per_C.end(), [](const ExceedanceSeries& e) { return !e.exceedance_orders.empty(); });
}

bool ViolationReport::bounded_for_some_C() const {
  return std::any_of(per_C.begin(), per_C.end(), [](const ExceedanceSeries& e) { return e.exceedance_orders.empty(); });
}

ViolationReport gevrey_violation_check(const WavepacketSpec& spec, const MultiIndex& alpha,
                                       const std::vector<int>& m_values, double s_compare,
                                       const std::vector<double>& C_values) {
  if (alpha.size() != spec.dim()) throw DimensionError("gevrey_violation_check: alpha has wrong dimension");
  if (alpha.is_zero()) throw std::invalid_argument("gevrey_violation_check: alpha must be nonzero");
  if (k_of(spec.F, alpha) != dot(alpha, spec.q))
    throw std::invalid_argument("gevrey_violation_check: alpha does not attain its gauge on the witness facet");

  ViolationReport rep;
  rep.alpha = alpha;
  rep.s_compare = s_compare;
  rep.m = m_values;
  for (int m : m_values) {
    if (m < 0) throw std::invalid_argument("gevrey_violation_check: negative order");
    rep.log_derivative.push_back(derivative_at_center(spec, alpha.scaled(m)).log_abs);
  }
  for (double C : C_values) {
    ExceedanceSeries e;
    e.C = C;
    const GevreyParams p{s_compare, to_double(spec.sigma), C};
    for (std::size_t i = 0; i < m_values.size(); ++i) {
      e.log_bound.push_back(log_derivative_bound(alpha.scaled(m_values[i]), spec.F, p));
      if (rep.log_derivative[i] > e.log_bound.back()) e.exceedance_orders.push_back(m_values[i]);
    }
    rep.per_C.push_back(std::move(e));
  }
  return rep;
}

std::optional<int> lower_bound_threshold(const WavepacketSpec& spec, const MultiIndex& beta,
                                         const std::vector<int>& m_values) {
  const double eta = to_double(spec.eta);
  std::optional<int> threshold;
  for (int m : m_values) {
    const MultiIndex b = beta.scaled(m);
    const double lower = -std::log(2 * eta) + xi0_log_abs(spec, b) + std::lgamma((to_double(dot(b, spec.q)) + 1) / eta);
    if (derivative_at_center(spec, b).log_abs > lower) {
      if (!threshold) threshold = m;
    } else {
      threshold.reset();
    }
  }
  return threshold;
}

int ACoefficients::max_order() const {
  int k = 0;
  for (const auto& [gamma, poly] : c) k = std::max(k, gamma.order());
  return k;
}

ACoefficients apply_symbol(const WavepacketSpec& spec, const OperatorSymbol& P, const ACoefficients& a) {
  if (P.dim() != spec.dim()) throw DimensionError("apply_symbol: symbol has wrong dimension");
  for (const auto& beta : P.support())
    if (dot(beta, spec.q) > 1)
      throw std::invalid_argument("apply_symbol: support term " + to_string(beta) + " lies beyond the witness facet");

  ACoefficients out;
  out.level = a.level + 1;
  for (const auto& alpha : derivative_indices(P)) {
    const OperatorSymbol D = xi_derivative(P, alpha);
    if (D.is_zero()) continue;
    RPolynomial E;
    for (const auto& [beta, coef] : D.terms()) {
      const double mono = xi0_sign(spec, beta) * std::exp(xi0_log_abs(spec, beta));
      E.add_term(dot(beta, spec.q), coef.to_complex() * mono);
    }
    E = E.scaled(i_power(-alpha.order()) / alpha.factorial()).shifted(spec.epsilon * dot(alpha, spec.q));
    for (const auto& [gamma, c] : a.c) {
      auto& slot = out.c[gamma + alpha];
      slot += E * c;
    }
  }
  std::erase_if(out.c, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

ACoefficients iterate_coefficients(const WavepacketSpec& spec, const SymbolSystem& system,
                                   const std::vector<std::size_t>& sequence) {
  if (system.dim() != spec.dim()) throw DimensionError("iterate_coefficients: system has wrong dimension");
  ACoefficients a;
  a.c.emplace(MultiIndex::zero(spec.dim()), RPolynomial::constant(1.0));
  for (std::size_t i : sequence) {
    if (i >= system.size()) throw std::out_of_range("iterate_coefficients: operator index out of range");
    a = apply_symbol(spec, system[i], a);
  }
  return a;
}

std::complex<double> evaluate_coefficients(const ACoefficients& a, const WavepacketSpec& spec, const BumpFunction& bump,
                                           const Eigen::VectorXd& x, double r) {
  const std::size_t n = spec.dim();
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    y[j] = std::pow(r, to_double(spec.epsilon * spec.q[j])) * (x[jj] - spec.x0[jj]);
  }
  std::complex<double> sum = 0.0;
  for (const auto& [gamma, c] : a.c) sum += rpoly_eval(c, r) * bump.derivative(gamma, y);
  return sum;
}

double log_iterate_norm_estimate(const ACoefficients& a, const WavepacketSpec& spec, const BumpFunction& bump) {
  if (a.max_order() > bump.max_order())
    throw std::out_of_range("iterate_norm_estimate: bump order is below the largest |gamma| in the map");
  struct Flat {
    double sup;
    std::vector<std::pair<double, std::complex<double>>> terms;
  };
  std::vector<Flat> flat;
  double E = 0.0, log_scale = -INFINITY;
  for (const auto& [gamma, c] : a.c) {
    Flat f{bump.sup_norm(gamma), {}};
    double mass = 0.0;
    for (const auto& [e, v] : c.terms()) {
      f.terms.emplace_back(to_double(e), v);
      E = std::max(E, f.terms.back().first);
      mass += std::abs(v);
    }
    if (f.sup == 0.0) continue;
    log_scale = std::max(log_scale, std::log(mass * f.sup));
    flat.push_back(std::move(f));
  }
  if (flat.empty()) return -INFINITY;
  log_scale += std::log(static_cast<double>(flat.size()));

  const double eta = to_double(spec.eta);
  auto log_f = [&](double t) {
    double sum = 0.0;
    for (const auto& f : flat) {
      std::complex<double> v = 0.0;
      for (const auto& [e, c] : f.terms) v += c * std::exp((e - E) * t);
      sum += std::abs(v) * f.sup;
    }
    return std::log(sum) + (E + 1) * t - std::exp(eta * t);
  };
  // Upper envelope log_scale + (E+1)t - e^{eta t} locates the window end.
  auto envelope = [&](double t) { return log_scale + (E + 1) * t - std::exp(eta * t); };
  const double tstar = std::max(0.0, std::log((E + 1) / eta) / eta);
  double peak = -INFINITY;
  for (int i = 0; i <= 256; ++i) peak = std::max(peak, log_f(tstar * i / 256.0));
  double T = tstar + 1.0;
  while (envelope(T) > peak - 60.0) T = tstar + 2 * (T - tstar);
  return integrate_log(log_f, 0.0, T).log_value;
}

double iterate_norm_estimate(const ACoefficients& a, const WavepacketSpec& spec, const BumpFunction& bump) {
  return std::exp(log_iterate_norm_estimate(a, spec, bump));
}

}  // namespace mqe
