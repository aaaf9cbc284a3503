#include "mqe/bump.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/differentiation/autodiff.hpp>

namespace mqe {

namespace {

namespace ad = boost::math::differentiation;

template <class T>
T flat(const T& s, double p) {
  using std::exp;
  using std::pow;
  return exp(-1.0 / pow(s, p));
}

std::vector<double> factorials(int n) {
  std::vector<double> f(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  return f;
}

const std::vector<double>& fact() {
  static const std::vector<double> f = factorials(2 * kBumpMaxOrder + 2);
  return f;
}

// Points of the closed positive orthant part of the annulus delta <= |x| <= 2 delta.
// |d^gamma phi| is invariant under every reflection x_j -> -x_j.
constexpr int kRadii = 384;

std::vector<std::vector<double>> annulus_grid(std::size_t n, double delta) {
  std::vector<std::vector<double>> pts;
  std::vector<std::vector<double>> dirs;
  if (n == 1) {
    dirs.push_back({1.0});
  } else {
    const int per_angle = std::max(3, static_cast<int>(std::pow(256.0, 1.0 / (n - 1))));
    std::vector<int> idx(n - 1, 0);
    while (true) {
      std::vector<double> d(n, 1.0);
      double sprod = 1.0;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        const double ang = std::numbers::pi / 2 * idx[k] / (per_angle - 1);
        d[k] = sprod * std::cos(ang);
        sprod *= std::sin(ang);
      }
      d[n - 1] = sprod;
      dirs.push_back(d);
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == per_angle) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  for (int i = 0; i <= kRadii; ++i) {
    const double r = delta * (1.0 + static_cast<double>(i) / kRadii);
    for (const auto& d : dirs) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = r * d[j];
      pts.push_back(std::move(x));
    }
  }
  return pts;
}

}  // namespace

double smooth_step(double t, double p) {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double a = flat(2.0 - t, p), b = flat(t - 1.0, p);
  return a / (a + b);
}

std::vector<double> radial_profile_derivatives(double u, double delta, double p) {
  std::vector<double> out(kBumpMaxOrder + 1, 0.0);
  const double t = std::sqrt(u) / delta;
  if (t <= 1.0 || t >= 2.0) {
    out[0] = smooth_step(t, p);
    return out;
  }
  const auto x = ad::make_fvar<double, kBumpMaxOrder>(u);
  const auto tt = sqrt(x) / delta;
  const auto a = flat(2.0 - tt, p);
  const auto b = flat(tt - 1.0, p);
  const auto g = a / (a + b);
  for (int k = 0; k <= kBumpMaxOrder; ++k) out[k] = g.derivative(k);
  return out;
}

BumpFunction::BumpFunction(std::size_t dim, double delta, int max_order, double sharpness)
    : dim_(dim), delta_(delta), max_order_(max_order), sharpness_(sharpness), grid_(annulus_grid(dim, delta)) {
  const std::size_t per_radius = grid_.size() / (kRadii + 1);
  for (int i = 0; i <= kRadii; ++i) {
    const double r = delta * (1.0 + static_cast<double>(i) / kRadii);
    profiles_.push_back(radial_profile_derivatives(r * r, delta, sharpness));
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) grid_radius_.push_back(i / per_radius);
}

double BumpFunction::value(std::span<const double> x) const {
  double u = 0.0;
  for (double v : x) u += v * v;
  return smooth_step(std::sqrt(u) / delta_, sharpness_);
}

// phi(x+h) = g(|x|^2 + sum_j (2 x_j h_j + h_j^2)); the coefficient of h^gamma
// collects g^(|k|) over k with gamma_j/2 <= k_j <= gamma_j.
double BumpFunction::derivative(const MultiIndex& gamma, std::span<const double> x) const {
  if (x.size() != dim_ || gamma.size() != dim_) throw DimensionError("bump: wrong dimension");
  if (gamma.order() > max_order_) throw std::out_of_range("bump: derivative order above the declared order");
  double u = 0.0;
  for (double v : x) u += v * v;
  return combine(gamma, x, radial_profile_derivatives(u, delta_, sharpness_));
}

double BumpFunction::combine(const MultiIndex& gamma, std::span<const double> x, const std::vector<double>& g) const {
  if (gamma.is_zero()) return g[0];
  const auto& f = fact();

  std::vector<int> k(dim_);
  for (std::size_t j = 0; j < dim_; ++j) k[j] = (gamma[j] + 1) / 2;
  double total = 0.0;
  while (true) {
    int order = 0;
    double term = 1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      order += k[j];
      const int p = 2 * k[j] - gamma[j];
      term *= f[gamma[j]] / (f[gamma[j] - k[j]] * f[p]);
      if (p > 0) term *= std::pow(2 * x[j], p);
    }
    total += g[order] * term;
    std::size_t j = 0;
    while (j < dim_ && ++k[j] > gamma[j]) {
      k[j] = (gamma[j] + 1) / 2;
      ++j;
    }
    if (j == dim_) break;
  }
  return total;
}

double BumpFunction::sup_norm(const MultiIndex& gamma) const {
  if (gamma.order() > max_order_) throw std::out_of_range("bump: derivative order above the declared order");
  if (gamma.is_zero()) return 1.0;
  if (auto it = sup_cache_.find(gamma); it != sup_cache_.end()) return it->second;
  double best = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i)
    best = std::max(best, std::abs(combine(gamma, grid_[i], profiles_[grid_radius_[i]])));
  sup_cache_.emplace(gamma, best);
  return best;
}

BumpFunction make_bump(std::size_t dim, double delta, int M, double sharpness) {
  if (!(sharpness >= 1.0)) throw std::invalid_argument("make_bump: sharpness must be at least 1");
  if (!(delta > 0.0)) throw std::invalid_argument("make_bump: delta must be positive");
  if (M < 0 || M > kBumpMaxOrder) throw std::invalid_argument("make_bump: order must lie in [0, 24]");
  if (dim == 0) throw DimensionError("make_bump: dimension must be positive");
  return BumpFunction(dim, delta, M, sharpness);
}

}  // namespace mqe
