#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace mqe {

/// Closed interval of doubles with outward rounding on every operation.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double v) : lo(v), hi(v) {}
  Interval(double l, double h) : lo(l), hi(h) {}

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

namespace interval_detail {
inline double down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
inline double up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }
}  // namespace interval_detail

inline Interval operator+(Interval a, Interval b) {
  return {interval_detail::down(a.lo + b.lo), interval_detail::up(a.hi + b.hi)};
}
inline Interval operator-(Interval a, Interval b) {
  return {interval_detail::down(a.lo - b.hi), interval_detail::up(a.hi - b.lo)};
}
inline Interval operator-(Interval a) { return {-a.hi, -a.lo}; }
inline Interval operator*(Interval a, Interval b) {
  const double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {interval_detail::down(*std::min_element(p, p + 4)), interval_detail::up(*std::max_element(p, p + 4))};
}

inline Interval sqr(Interval a) {
  if (a.lo >= 0) return {interval_detail::down(a.lo * a.lo), interval_detail::up(a.hi * a.hi)};
  if (a.hi <= 0) return {interval_detail::down(a.hi * a.hi), interval_detail::up(a.lo * a.lo)};
  return {0.0, interval_detail::up(std::max(a.lo * a.lo, a.hi * a.hi))};
}

inline Interval hull(Interval a, Interval b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

/// a^e for a >= 0 and e >= 0. std::pow is not correctly rounded, so the
/// result is widened by a relative 4 ulp on each side.
inline Interval pow_nonneg(Interval a, double e) {
  if (e == 0.0) return Interval(1.0);
  const double lo = std::max(a.lo, 0.0);
  constexpr double slack = 4 * std::numeric_limits<double>::epsilon();
  return {std::max(0.0, std::pow(lo, e) * (1 - slack)), std::pow(a.hi, e) * (1 + slack)};
}

inline double pow_nonneg(double a, double e) { return e == 0.0 ? 1.0 : std::pow(a, e); }

}  // namespace mqe
