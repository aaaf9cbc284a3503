#include "mqe/ellipticity.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <stdexcept>

#include "mqe/interval.hpp"

namespace mqe {

namespace {

// Scalar carrying a value with first and second derivative along a line.
struct Jet2 {
  double v = 0.0, d = 0.0, dd = 0.0;
  Jet2() = default;
  explicit Jet2(double x) : v(x) {}
  Jet2(double a, double b, double c) : v(a), d(b), dd(c) {}
  friend Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
  friend Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
  friend Jet2 operator*(Jet2 a, Jet2 b) { return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2 * a.d * b.d + a.v * b.dd}; }
};

Interval coefficient_interval(const Rational& c) {
  const double d = to_double(c);
  if (Rational(d) == c) return Interval(d);
  return {interval_detail::down(d), interval_detail::up(d)};
}

// One term of a part: coefficient and the exponents alpha_j q_j in w.
struct SliceTerm {
  Interval re, im;
  double re_d = 0.0, im_d = 0.0;
  std::vector<double> w_exp;
  MultiIndex alpha;
};

struct SliceProblem {
  std::size_t n = 0;
  std::vector<double> q;
  std::vector<std::vector<SliceTerm>> parts;
  std::vector<int> signs;  // +1 / -1 per coordinate
  std::vector<double> omega;  // margin in w: delta^{1/q_j}

  double sign_of(const MultiIndex& a) const {
    int neg = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (signs[j] < 0) neg += a[j];
    return neg % 2 ? -1.0 : 1.0;
  }

  Interval m_interval(const std::vector<Interval>& W) const {
    Interval total(0.0);
    for (const auto& terms : parts) {
      Interval re(0.0), im(0.0);
      for (const auto& t : terms) {
        Interval mono(sign_of(t.alpha));
        for (std::size_t j = 0; j < n; ++j)
          if (t.w_exp[j] != 0.0) mono = mono * pow_nonneg(W[j], t.w_exp[j]);
        re = re + t.re * mono;
        im = im + t.im * mono;
      }
      total = total + sqr(re) + sqr(im);
    }
    return total;
  }

  std::vector<double> xi_of(const std::vector<double>& w) const {
    std::vector<double> xi(n);
    for (std::size_t j = 0; j < n; ++j) xi[j] = signs[j] * std::pow(std::max(w[j], 0.0), q[j]);
    return xi;
  }

  double m_value(const std::vector<double>& w) const {
    const auto xi = xi_of(w);
    double total = 0.0;
    for (const auto& terms : parts) {
      double re = 0.0, im = 0.0;
      for (const auto& t : terms) {
        double mono = 1.0;
        for (std::size_t j = 0; j < n; ++j)
          for (int e = 0; e < t.alpha[j]; ++e) mono *= xi[j];
        re += t.re_d * mono;
        im += t.im_d * mono;
      }
      total += re * re + im * im;
    }
    return total;
  }

  // m along w + t (e_j - e_last), with derivatives in t at t = 0.
  Jet2 m_jet(const std::vector<double>& w, std::size_t j) const {
    std::vector<Jet2> xi(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double dk = k == j ? 1.0 : (k == n - 1 ? -1.0 : 0.0);
      const double wk = w[k], qk = q[k], s = signs[k];
      if (dk == 0.0) {
        xi[k] = Jet2(s * std::pow(wk, qk));
      } else {
        xi[k] = Jet2(s * std::pow(wk, qk), s * qk * std::pow(wk, qk - 1) * dk,
                     s * qk * (qk - 1) * std::pow(wk, qk - 2) * dk * dk);
      }
    }
    Jet2 total;
    for (const auto& terms : parts) {
      Jet2 re, im;
      for (const auto& t : terms) {
        Jet2 mono(1.0);
        for (std::size_t k = 0; k < n; ++k)
          for (int e = 0; e < t.alpha[k]; ++e) mono = mono * xi[k];
        re = re + Jet2(t.re_d) * mono;
        im = im + Jet2(t.im_d) * mono;
      }
      total = total + re * re + im * im;
    }
    return total;
  }
};

struct Box {
  std::vector<double> lo, hi;  // free coordinates w_0..w_{n-2}
  double bound = 0.0;
};

struct BoxOrder {
  bool operator()(const Box& a, const Box& b) const { return a.bound > b.bound; }
};

std::vector<Interval> box_intervals(const SliceProblem& P, const Box& b, bool& feasible) {
  const std::size_t n = P.n;
  std::vector<Interval> W(n);
  double slo = 0.0, shi = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    W[j] = Interval(b.lo[j], b.hi[j]);
    slo += b.lo[j];
    shi += b.hi[j];
  }
  const double last_hi = 1.0 - slo, last_lo = std::max(P.omega[n - 1], 1.0 - shi);
  feasible = last_hi >= P.omega[n - 1];
  W[n - 1] = Interval(interval_detail::down(std::max(0.0, last_lo)), interval_detail::up(std::max(last_lo, last_hi)));
  return W;
}

std::vector<double> feasible_center(const SliceProblem& P, const Box& b) {
  const std::size_t n = P.n;
  std::vector<double> w(n);
  double s = 0.0, slo = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    w[j] = 0.5 * (b.lo[j] + b.hi[j]);
    s += w[j];
    slo += b.lo[j];
  }
  const double cap = 1.0 - P.omega[n - 1];
  if (s > cap) {
    const double lam = (cap - slo) / (s - slo);
    s = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      w[j] = b.lo[j] + lam * (w[j] - b.lo[j]);
      s += w[j];
    }
  }
  w[n - 1] = std::max(P.omega[n - 1], 1.0 - s);
  return w;
}

// Coordinate-wise damped Newton on m, golden section when Newton stalls.
std::vector<double> polish(const SliceProblem& P, std::vector<double> w, int iterations) {
  const std::size_t n = P.n;
  if (n < 2) return w;
  double m = P.m_value(w);
  for (int it = 0; it < iterations && m > 0.0; ++it) {
    const std::size_t j = static_cast<std::size_t>(it) % (n - 1);
    const double t_lo = P.omega[j] - w[j], t_hi = w[n - 1] - P.omega[n - 1];
    auto moved = [&](double t) {
      auto v = w;
      v[j] = std::max(v[j] + t, P.omega[j]);
      v[n - 1] = std::max(v[n - 1] - t, P.omega[n - 1]);
      return v;
    };
    const Jet2 J = P.m_jet(w, j);
    double t = J.dd > 0 ? -J.d / J.dd : -J.d;
    t = std::clamp(t, t_lo, t_hi);
    bool improved = false;
    for (int k = 0; k < 40 && t != 0.0; ++k, t *= 0.5) {
      const auto v = moved(t);
      const double mv = P.m_value(v);
      if (mv < m) {
        w = v;
        m = mv;
        improved = true;
        break;
      }
    }
    if (!improved) {
      double a = std::max(t_lo, -0.05), b = std::min(t_hi, 0.05);
      constexpr double g = 0.6180339887498949;
      double c = b - g * (b - a), d = a + g * (b - a);
      double fc = P.m_value(moved(c)), fd = P.m_value(moved(d));
      for (int k = 0; k < 80; ++k) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - g * (b - a);
          fc = P.m_value(moved(c));
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + g * (b - a);
          fd = P.m_value(moved(d));
        }
      }
      const double tb = fc < fd ? c : d;
      const double mb = std::min(fc, fd);
      if (mb < m) {
        w = moved(tb);
        m = mb;
      }
    }
  }
  return w;
}

double witness_value(const std::vector<QuasiHomogeneousPart>& parts, const Eigen::VectorXd& xi) {
  double s = 0.0;
  for (const auto& p : parts) s += std::abs(evaluate(p.part, xi));
  return s;
}

// sum over all terms of |a_alpha xi^alpha|: a small part value only means a
// zero when it comes from cancellation, not from small monomials.
double term_mass(const std::vector<QuasiHomogeneousPart>& parts, const Eigen::VectorXd& xi) {
  double s = 0.0;
  for (const auto& p : parts)
    for (const auto& [alpha, c] : p.part.terms()) {
      double mono = std::abs(c.to_complex());
      for (std::size_t j = 0; j < alpha.size(); ++j) mono *= std::pow(std::abs(xi[static_cast<Eigen::Index>(j)]), alpha[j]);
      s += mono;
    }
  return s;
}

bool is_witness(const std::vector<QuasiHomogeneousPart>& parts, const Eigen::VectorXd& xi, double tol, double delta,
                double& value) {
  value = witness_value(parts, xi);
  return value < tol && value <= tol * term_mass(parts, xi) && xi.cwiseAbs().minCoeff() >= delta * (1 - 1e-12);
}

struct LevelResult {
  MarginLevel level;
  std::optional<Eigen::VectorXd> witness;
  double witness_value = 0.0;
  std::vector<double> argmin_w;
  std::vector<int> argmin_signs;
  bool exhausted = false;
  std::size_t boxes = 0;
};

LevelResult search_level(SliceProblem& P, const std::vector<QuasiHomogeneousPart>& parts, double delta,
                         const EllipticityConfig& cfg, double scale) {
  const std::size_t n = P.n;
  LevelResult out;
  out.level.delta = delta;
  P.omega.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) P.omega[j] = std::pow(delta, 1.0 / P.q[j]);
  double omega_sum = 0.0;
  for (double o : P.omega) omega_sum += o;
  if (omega_sum > 1.0) throw std::invalid_argument("check_proposition: margin region is empty");

  double certified = INFINITY, observed = INFINITY;
  const std::size_t patterns = std::size_t{1} << n;
  for (std::size_t pat = 0; pat < patterns; ++pat) {
    for (std::size_t j = 0; j < n; ++j) P.signs[j] = (pat >> j) & 1 ? -1 : 1;

    if (n == 1) {
      std::vector<double> w = {1.0};
      const double v = P.m_value(w);
      const double lo = P.m_interval({Interval(1.0)}).lo;
      if (v < observed) {
        out.argmin_w = w;
        out.argmin_signs = P.signs;
      }
      observed = std::min(observed, v);
      certified = std::min(certified, lo);
      const auto xi = P.xi_of(w);
      Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xi.data(), 1);
      double wv = 0.0;
      if (is_witness(parts, x, cfg.witness_tol, 0.0, wv)) {
        out.witness = x;
        out.witness_value = wv;
        return out;
      }
      continue;
    }

    std::priority_queue<Box, std::vector<Box>, BoxOrder> queue;
    Box root;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      root.lo.push_back(P.omega[j]);
      root.hi.push_back(1.0 - (omega_sum - P.omega[j]));
    }
    bool feasible = true;
    root.bound = P.m_interval(box_intervals(P, root, feasible)).lo;
    queue.push(root);
    double best = INFINITY, last_polish = INFINITY;
    std::vector<double> best_w;
    double pattern_cert = INFINITY;
    std::size_t count = 0;
    while (true) {
      if (queue.empty()) break;
      Box b = queue.top();
      if (b.bound > 0 && b.bound >= best / 16) {
        pattern_cert = b.bound;
        break;
      }
      queue.pop();
      if (++count > cfg.max_boxes) {
        out.exhausted = true;
        break;
      }
      const auto w = feasible_center(P, b);
      const double v = P.m_value(w);
      if (v < best) {
        best = v;
        best_w = w;
      }
      if (best < 1e-6 * scale && best < last_polish / 10) {
        last_polish = best;
        const auto pw = polish(P, best_w, cfg.polish_iterations);
        const double pv = P.m_value(pw);
        if (pv < best) {
          best = pv;
          best_w = pw;
        }
        const auto xi = P.xi_of(best_w);
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(n));
        double wv = 0.0;
        if (is_witness(parts, x, cfg.witness_tol, delta, wv)) {
          out.witness = x;
          out.witness_value = wv;
          out.boxes += count;
          return out;
        }
      }
      // Split: geometric on badly scaled coordinates, else bisect the widest.
      std::size_t axis = 0;
      double score = -1.0;
      bool geometric = false;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        if (b.lo[j] > 0 && b.hi[j] / b.lo[j] > 16) {
          const double s = 1.0 + std::log2(b.hi[j] / b.lo[j]);
          if (!geometric || s > score) {
            geometric = true;
            score = s;
            axis = j;
          }
        } else if (!geometric && b.hi[j] - b.lo[j] > score) {
          score = b.hi[j] - b.lo[j];
          axis = j;
        }
      }
      const double cut = geometric ? std::sqrt(b.lo[axis] * b.hi[axis]) : 0.5 * (b.lo[axis] + b.hi[axis]);
      Box left = b, right = b;
      left.hi[axis] = cut;
      right.lo[axis] = cut;
      for (Box* child : {&left, &right}) {
        const auto W = box_intervals(P, *child, feasible);
        if (!feasible) continue;
        child->bound = std::max(P.m_interval(W).lo, b.bound);
        queue.push(std::move(*child));
      }
    }
    out.boxes += count;
    if (best < observed) {
      observed = best;
      out.argmin_w = best_w;
      out.argmin_signs = P.signs;
    }
    certified = std::min(certified, out.exhausted ? 0.0 : pattern_cert);
    if (out.exhausted) break;
  }
  out.level.min_observed = observed;
  out.level.certified = !out.exhausted && certified > 0 && std::isfinite(certified);
  out.level.min_certified = out.level.certified ? certified : 0.0;
  return out;
}

}  // namespace

QuasiHomogeneousPart qh_part(const OperatorSymbol& P, const RationalVector& q) {
  if (q.size() != P.dim()) throw DimensionError("qh_part: q has wrong dimension");
  for (const auto& v : q)
    if (v <= 0) throw std::invalid_argument("qh_part: q must be strictly positive");
  OperatorSymbol::TermMap terms;
  for (const auto& [alpha, c] : P.terms())
    if (dot(alpha, q) == 1) terms.emplace(alpha, c);
  return {q, OperatorSymbol(P.dim(), std::move(terms))};
}

std::string to_string(EllipticityStatus s) {
  switch (s) {
    case EllipticityStatus::Elliptic: return "Elliptic";
    case EllipticityStatus::NotElliptic: return "NotElliptic";
    case EllipticityStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

EllipticityVerdict check_proposition(const SymbolSystem& system, const NewtonPolyhedron& F,
                                     const EllipticityConfig& cfg) {
  if (!F.regular) throw std::invalid_argument("check_proposition: polyhedron is not regular: " + F.diagnostic);
  if (!(cfg.delta_min > 0.0)) throw std::invalid_argument("check_proposition: delta_min must be positive");
  if (!(cfg.delta_factor > 0.0 && cfg.delta_factor < 1.0))
    throw std::invalid_argument("check_proposition: delta_factor must lie in (0,1)");
  if (system.dim() != F.dim) throw DimensionError("check_proposition: system and polyhedron differ in dimension");
  const std::size_t n = F.dim;

  std::vector<double> deltas;
  for (double d = std::max(cfg.delta_start, cfg.delta_min); ; d *= cfg.delta_factor) {
    if (d <= cfg.delta_min * (1 + 1e-9)) {
      deltas.push_back(cfg.delta_min);
      break;
    }
    deltas.push_back(d);
  }

  EllipticityVerdict verdict;
  verdict.config = cfg;
  bool any_inconclusive = false;
  for (const auto& q : F.facet_normals) {
    FacetVerdict fv;
    fv.q = q;
    SliceProblem P;
    P.n = n;
    P.q = to_doubles(q);
    P.signs.assign(n, 1);
    for (const auto& sym : system) {
      fv.parts.push_back(qh_part(sym, q));
      std::vector<SliceTerm> terms;
      for (const auto& [alpha, c] : fv.parts.back().part.terms()) {
        SliceTerm t;
        t.re = coefficient_interval(c.re);
        t.im = coefficient_interval(c.im);
        t.re_d = to_double(c.re);
        t.im_d = to_double(c.im);
        t.alpha = alpha;
        for (std::size_t j = 0; j < n; ++j) t.w_exp.push_back(alpha[j] * P.q[j]);
        terms.push_back(std::move(t));
      }
      if (!terms.empty()) P.parts.push_back(std::move(terms));
    }
    for (std::size_t j = 0; j < n; ++j) {
      bool all_zero = true;
      for (const auto& part : fv.parts)
        if (!restrict_to_coordinate_hyperplane(part.part, j).is_zero()) all_zero = false;
      if (all_zero) fv.vanishing_axes.push_back(j);
    }
    // Scale of m: its value at the barycenter of the positive slice.
    std::vector<double> bary(n, 1.0 / n);
    const double scale = std::max(P.m_value(bary), 1e-300);

    fv.status = EllipticityStatus::Elliptic;
    for (double delta : deltas) {
      LevelResult lr = search_level(P, fv.parts, delta, cfg, scale);
      fv.boxes += lr.boxes;
      fv.levels.push_back(lr.level);
      if (lr.witness) {
        fv.status = EllipticityStatus::NotElliptic;
        fv.witness = lr.witness;
        fv.witness_value = lr.witness_value;
        fv.delta = delta;
        fv.note = "common zero of the facet parts off the coordinate hyperplanes";
        break;
      }
      if (!lr.level.certified) {
        fv.status = EllipticityStatus::Inconclusive;
        fv.note = lr.exhausted ? "box budget exhausted before a certificate or witness" : "no positive lower bound";
        break;
      }
      fv.min_certified = lr.level.min_certified;
      fv.delta = delta;
      if (delta == deltas.back() && lr.level.min_observed < cfg.near_zero * scale) {
        // Near-zero minimum next to a hyperplane where the parts do not vanish
        // identically: the limit could be a genuine zero or not.
        bool touches_open_axis = false;
        for (std::size_t j = 0; j < n; ++j) {
          const bool at_margin = lr.argmin_w[j] <= P.omega[j] * (1 + 1e-6) + 1e-300;
          const bool vanishes =
              std::find(fv.vanishing_axes.begin(), fv.vanishing_axes.end(), j) != fv.vanishing_axes.end();
          if (at_margin && !vanishes) touches_open_axis = true;
        }
        if (touches_open_axis) {
          fv.status = EllipticityStatus::Inconclusive;
          fv.note = "near-zero minimum at the margin of a hyperplane where the parts do not vanish identically";
        }
      }
    }
    if (fv.status == EllipticityStatus::NotElliptic && !verdict.witness)
      verdict.witness = EllipticityWitness{q, *fv.witness};
    if (fv.status == EllipticityStatus::Inconclusive) any_inconclusive = true;
    verdict.per_facet.push_back(std::move(fv));
  }
  if (verdict.witness) verdict.status = EllipticityStatus::NotElliptic;
  else if (any_inconclusive) verdict.status = EllipticityStatus::Inconclusive;
  else verdict.status = EllipticityStatus::Elliptic;
  return verdict;
}

double InequalityEstimate::growth() const {
  if (infinite) return INFINITY;
  if (profile.empty() || !(profile.front().ratio > 0)) return 1.0;
  double mx = 0.0;
  for (const auto& e : profile) mx = std::max(mx, e.ratio);
  return mx / profile.front().ratio;
}

bool InequalityEstimate::bounded() const { return !infinite && growth() <= 2.0; }

InequalityEstimate check_inequality(const SymbolSystem& system, const NewtonPolyhedron& F, double R,
                                    const SamplerConfig& cfg) {
  if (!F.regular) throw std::invalid_argument("check_inequality: polyhedron is not regular: " + F.diagnostic);
  if (!(R > 0.0)) throw std::invalid_argument("check_inequality: R must be positive");
  if (cfg.directions < 1 || cfg.radii < 2 || !(cfg.span > 1.0) || !(cfg.floor > 0.0))
    throw std::invalid_argument("check_inequality: bad sampler configuration");
  const std::size_t n = F.dim;
  const auto N = static_cast<Eigen::Index>(n);

  InequalityEstimate est;
  est.R = R;
  est.worst_ratio_point = Eigen::VectorXd::Zero(N);
  est.profile.resize(static_cast<std::size_t>(cfg.radii));
  for (int i = 0; i < cfg.radii; ++i) est.profile[static_cast<std::size_t>(i)].index = i;

  auto ratio = [&](const Eigen::VectorXd& xi, bool& zero) {
    double den = 0.0;
    for (const auto& P : system) den += std::abs(evaluate(P, xi));
    ++est.samples;
    zero = den == 0.0;
    return zero ? INFINITY : weight_V(F, xi) / den;
  };

  std::mt19937_64 rng(cfg.seed);
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution coin(0.5);
  for (const auto& qr : F.facet_normals) {
    const auto q = to_doubles(qr);
    // Every point of quasi-radius >= r_lo has |xi| >= R.
    double r_lo = 0.0;
    for (double qj : q) r_lo = std::max(r_lo, n * std::pow(R, 1.0 / qj));
    auto quasi = [&](const Eigen::VectorXd& xi) {
      double rho = 0.0;
      for (std::size_t j = 0; j < n; ++j) rho += std::pow(std::abs(xi[static_cast<Eigen::Index>(j)]), 1.0 / q[j]);
      return rho;
    };
    auto to_shell = [&](Eigen::VectorXd xi, double r) {
      const double rho = quasi(xi);
      for (std::size_t j = 0; j < n; ++j) xi[static_cast<Eigen::Index>(j)] *= std::pow(r / rho, q[j]);
      return xi;
    };

    std::vector<Eigen::VectorXd> dirs;
    for (int d = 0; d < cfg.directions; ++d) {
      std::vector<double> w(n);
      double s = 0.0;
      for (auto& v : w) s += (v = expo(rng));
      Eigen::VectorXd xi(N);
      for (std::size_t j = 0; j < n; ++j)
        xi[static_cast<Eigen::Index>(j)] = (coin(rng) ? -1.0 : 1.0) * std::pow(w[j] / s, q[j]);
      dirs.push_back(xi);
    }

    // |xi| grows by about span across the shells
    const double log_span = std::log(cfg.span) / *std::max_element(q.begin(), q.end());
    for (int i = 0; i < cfg.radii; ++i) {
      const double r = r_lo * std::exp(log_span * static_cast<double>(i) / (cfg.radii - 1));
      std::vector<std::pair<double, Eigen::VectorXd>> scored;
      for (const auto& d : dirs) {
        Eigen::VectorXd xi = to_shell(d, r);
        bool zero = false;
        scored.emplace_back(ratio(xi, zero), xi);
        if (zero && !est.zero_denominator) est.zero_denominator = xi;
      }
      std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      for (int k = 0; k < std::min<int>(cfg.refine_top, static_cast<int>(scored.size())); ++k) {
        auto& [best, xi] = scored[static_cast<std::size_t>(k)];
        double h = 0.25 * xi.norm();
        while (h >= cfg.floor && std::isfinite(best)) {
          bool moved = false;
          for (std::size_t j = 0; j < n && !moved; ++j)
            for (double sgn : {1.0, -1.0}) {
              Eigen::VectorXd cand = xi;
              cand[static_cast<Eigen::Index>(j)] += sgn * h;
              if (cand.cwiseAbs().maxCoeff() == 0.0) continue;
              cand = to_shell(cand, r);
              bool zero = false;
              const double v = ratio(cand, zero);
              if (zero && !est.zero_denominator) est.zero_denominator = cand;
              if (v > best) {
                best = v;
                xi = cand;
                moved = true;
                break;
              }
            }
          if (!moved) h *= 0.5;
        }
      }
      auto& entry = est.profile[static_cast<std::size_t>(i)];
      for (const auto& [v, xi] : scored) {
        if (v > entry.ratio) {
          entry.ratio = v;
          entry.xi_norm = xi.norm();
        }
        if (v > est.C_hat) {
          est.C_hat = v;
          est.worst_ratio_point = xi;
        }
      }
    }
  }
  if (est.zero_denominator) {
    est.infinite = true;
    est.C_hat = INFINITY;
    est.worst_ratio_point = *est.zero_denominator;
  }
  return est;
}

bool concordant(const EllipticityVerdict& v, const InequalityEstimate& e) {
  if (v.status == EllipticityStatus::Inconclusive) return false;
  return (v.status == EllipticityStatus::Elliptic) == e.bounded();
}

Eigen::VectorXd normalize_witness(const Eigen::VectorXd& xi) {
  if (xi.size() == 0 || xi.cwiseAbs().minCoeff() == 0.0)
    throw std::invalid_argument("witness has a zero component");
  return xi / xi.norm();
}

EllipticityWitness witness_for_wavepacket(const EllipticityVerdict& verdict) {
  if (verdict.status != EllipticityStatus::NotElliptic || !verdict.witness)
    throw std::invalid_argument("witness_for_wavepacket: verdict carries no witness");
  return {verdict.witness->q, normalize_witness(verdict.witness->xi0)};
}

}  // namespace mqe
