#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "mqe/newton_polyhedron.hpp"

namespace mqe {

/// Terms of P on the facet <alpha,q> = 1. part(r^q xi) = r part(xi).
struct QuasiHomogeneousPart {
  RationalVector q;
  OperatorSymbol part;
};

QuasiHomogeneousPart qh_part(const OperatorSymbol& P, const RationalVector& q);

enum class EllipticityStatus { Elliptic, NotElliptic, Inconclusive };
std::string to_string(EllipticityStatus s);

struct EllipticityConfig {
  double delta_start = 0.1;
  double delta_factor = 0.1;
  double delta_min = 1e-4;
  double witness_tol = 1e-10;
  double near_zero = 1e-12;  // relative to the slice scale of m
  std::size_t max_boxes = 100000;
  int polish_iterations = 200;
};

/// Certified lower bound on m = sum_j |P_jq|^2 over the slice with every |xi_j| >= delta.
struct MarginLevel {
  double delta = 0.0;
  double min_certified = 0.0;  // 0 when no certificate was obtained
  double min_observed = 0.0;
  bool certified = false;
};

struct FacetVerdict {
  RationalVector q;
  EllipticityStatus status = EllipticityStatus::Inconclusive;
  std::vector<QuasiHomogeneousPart> parts;
  std::vector<MarginLevel> levels;
  double min_certified = 0.0;  // at the last certified level
  double delta = 0.0;          // that level's margin
  std::optional<Eigen::VectorXd> witness;  // on the slice sum |xi_j|^{1/q_j} = 1
  double witness_value = 0.0;              // sum_j |P_jq(witness)|
  std::vector<std::size_t> vanishing_axes;  // axes where every part restricts to 0
  std::string note;
  std::size_t boxes = 0;
};

struct EllipticityWitness {
  RationalVector q;
  Eigen::VectorXd xi0;
};

struct EllipticityVerdict {
  EllipticityStatus status = EllipticityStatus::Inconclusive;
  std::vector<FacetVerdict> per_facet;
  std::optional<EllipticityWitness> witness;
  EllipticityConfig config;
};

/// Decides, facet by facet, whether the quasi-homogeneous parts have a common
/// zero off the coordinate hyperplanes. Throws on irregular polyhedra and on
/// delta_min <= 0.
EllipticityVerdict check_proposition(const SymbolSystem& system, const NewtonPolyhedron& F,
                                     const EllipticityConfig& cfg = {});

struct SamplerConfig {
  int directions = 64;  // per facet
  int radii = 32;
  double span = 1e4;     // |xi| ranges over about [R, span R]
  double floor = 1e-3;   // smallest compass step, in xi units
  int refine_top = 4;    // directions refined per radius
  std::uint64_t seed = 20240601;
};

struct RatioProfileEntry {
  int index = 0;
  double ratio = 0.0;     // max of V / sum_j |P_j| at this radius
  double xi_norm = 0.0;   // |xi| at that maximum
};

struct InequalityEstimate {
  double C_hat = 0.0;
  double R = 0.0;
  Eigen::VectorXd worst_ratio_point;
  std::size_t samples = 0;
  bool infinite = false;
  std::optional<Eigen::VectorXd> zero_denominator;
  std::vector<RatioProfileEntry> profile;
  double growth() const;   // max over the profile / first entry
  bool bounded() const;    // growth within 2
};

/// Default threshold for "large |xi|"; lower-order terms may put zeros of P_j below it.
inline constexpr double kLargeXi = 10.0;

/// Samples V(xi)/sum_j |P_j(xi)| on shells r^q (slice points), |xi| >= R.
InequalityEstimate check_inequality(const SymbolSystem& system, const NewtonPolyhedron& F, double R,
                                    const SamplerConfig& cfg = {});

/// Elliptic iff the sampled ratio stays bounded.
bool concordant(const EllipticityVerdict& v, const InequalityEstimate& e);

/// Witness rescaled to |xi0| = 1. Throws unless the verdict is NotElliptic.
EllipticityWitness witness_for_wavepacket(const EllipticityVerdict& verdict);
/// Same normalization for an explicit direction; throws on a zero component.
Eigen::VectorXd normalize_witness(const Eigen::VectorXd& xi);

}  // namespace mqe
