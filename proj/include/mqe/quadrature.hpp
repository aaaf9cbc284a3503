#pragma once

#include <functional>
#include <stdexcept>

namespace mqe {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// log of an integral computed as peak + log int exp(log_f - peak).
struct LogIntegral {
  double log_value = 0.0;
  double rel_error = 0.0;
  double t_lo = 0.0;  // integration window actually used
  double t_hi = 0.0;
};

/// log int_{t0}^{t1} exp(log_f(t)) dt. The integrand is located on a scan grid
/// and truncated where it falls below exp(log_cut) times its peak; the rest is
/// integrated by adaptive Gauss-Kronrod panels.
LogIntegral integrate_log(const std::function<double(double)>& log_f, double t0, double t1,
                          double log_cut = -41.44653167389282, double rel_tol = 1e-12);

/// log int_1^inf r^a exp(-r^eta) dr, via r = e^t.
LogIntegral log_moment_integral(double a, double eta);

/// Closed form (1/eta) Gamma_upper((a+1)/eta, 1), in log form.
double log_moment_closed_form(double a, double eta);

}  // namespace mqe
