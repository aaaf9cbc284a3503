#include "mqe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace mqe {

namespace {

constexpr int kScan = 2048;

}  // namespace

LogIntegral integrate_log(const std::function<double(double)>& log_f, double t0, double t1, double log_cut,
                          double rel_tol) {
  if (!(t1 > t0)) throw QuadratureError("integrate_log: empty interval");
  std::vector<double> ts(kScan + 1), fs(kScan + 1);
  const double h = (t1 - t0) / kScan;
  double peak = -INFINITY;
  for (int i = 0; i <= kScan; ++i) {
    ts[i] = t0 + h * i;
    fs[i] = log_f(ts[i]);
    if (std::isnan(fs[i])) throw QuadratureError("integrate_log: NaN integrand");
    peak = std::max(peak, fs[i]);
  }
  if (!std::isfinite(peak)) throw QuadratureError("integrate_log: integrand vanishes or overflows");
  int lo = 0, hi = kScan;
  while (lo < kScan && fs[lo + 1] < peak + log_cut && fs[lo] < peak + log_cut) ++lo;
  while (hi > 0 && fs[hi - 1] < peak + log_cut && fs[hi] < peak + log_cut) --hi;

  LogIntegral out;
  out.t_lo = ts[lo];
  out.t_hi = ts[hi];
  // Split the window into panels so narrow peaks are never missed.
  const int panels = std::max(1, (hi - lo + 63) / 64);
  double total = 0.0, err = 0.0;
  auto g = [&](double t) { return std::exp(log_f(t) - peak); };
  for (int p = 0; p < panels; ++p) {
    const double a = out.t_lo + (out.t_hi - out.t_lo) * p / panels;
    const double b = out.t_lo + (out.t_hi - out.t_lo) * (p + 1) / panels;
    // Mapped onto [-1, 1] by hand: the library's error estimate ignores the
    // interval length.
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    auto gm = [&](double x) { return half * g(mid + half * x); };
    double e = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(gm, -1.0, 1.0, 15, rel_tol, &e);
    err += e;
  }
  if (!(total > 0.0)) throw QuadratureError("integrate_log: nonpositive integral");
  out.rel_error = err / total;
  if (out.rel_error > 1e-10) throw QuadratureError("integrate_log: no convergence");
  out.log_value = peak + std::log(total);
  return out;
}

LogIntegral log_moment_integral(double a, double eta) {
  if (!(eta > 0.0) || a < 0.0) throw std::invalid_argument("log_moment_integral: need eta > 0, a >= 0");
  // log integrand in t = log r: (a+1)t - e^{eta t}, concave with peak at t*.
  // Written relative to the peak value to avoid cancellation for large a.
  const double tstar = std::max(0.0, std::log((a + 1) / eta) / eta);
  const double base = (a + 1) * tstar - std::exp(eta * tstar);
  auto f = [a, eta, tstar, base](double t) {
    if (tstar == 0.0) return (a + 1) * t - std::exp(eta * t) - base;
    const double s = t - tstar;
    return (a + 1) * (s - std::expm1(eta * s) / eta);
  };
  double step = 1.0;
  while (f(tstar + step) > -60.0) step *= 2;
  LogIntegral out = integrate_log(f, 0.0, tstar + step);
  out.log_value += base;
  return out;
}

double log_moment_closed_form(double a, double eta) {
  const double x = (a + 1) / eta;
  return -std::log(eta) + boost::math::lgamma(x) + std::log(boost::math::gamma_q(x, 1.0));
}

}  // namespace mqe
