#pragma once

#include <map>
#include <span>
#include <vector>

#include "mqe/symbol.hpp"

namespace mqe {

/// Highest derivative order available from BumpFunction.
inline constexpr int kBumpMaxOrder = 24;

/// Radial plateau bump phi(x) = S(|x| / delta): 1 on |x| <= delta, 0 on
/// |x| >= 2 delta, with S the smooth step built from exp(-1/t^p). The
/// sharpness p puts phi in the Gevrey class of order 1 + 1/p.
class BumpFunction {
 public:
  BumpFunction(std::size_t dim, double delta, int max_order, double sharpness = 1.0);

  std::size_t dim() const { return dim_; }
  double delta() const { return delta_; }
  double support_radius() const { return 2 * delta_; }
  int max_order() const { return max_order_; }
  double sharpness() const { return sharpness_; }

  double value(std::span<const double> x) const;
  /// d^gamma phi at x (plain partial derivatives).
  double derivative(const MultiIndex& gamma, std::span<const double> x) const;
  /// max over a polar grid of the transition annulus of |d^gamma phi|.
  double sup_norm(const MultiIndex& gamma) const;

 private:
  std::size_t dim_;
  double delta_;
  int max_order_;
  double sharpness_;
  double combine(const MultiIndex& gamma, std::span<const double> x, const std::vector<double>& g) const;

  std::vector<std::vector<double>> grid_;
  std::vector<std::size_t> grid_radius_;
  std::vector<std::vector<double>> profiles_;
  mutable std::map<MultiIndex, double> sup_cache_;
};

/// Throws std::invalid_argument unless delta > 0, 0 <= M <= kBumpMaxOrder
/// and sharpness >= 1.
BumpFunction make_bump(std::size_t dim, double delta, int M, double sharpness = 1.0);

/// S(t): 1 for t <= 1, 0 for t >= 2.
double smooth_step(double t, double p = 1.0);

/// g^(k)(u) for k = 0..kBumpMaxOrder, where g(u) = S(sqrt(u) / delta).
std::vector<double> radial_profile_derivatives(double u, double delta, double p = 1.0);

}  // namespace mqe
