#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqe/report.hpp"

namespace mqe {

namespace exit_codes {
inline constexpr int ok = 0;
inline constexpr int input_error = 1;
inline constexpr int not_observed = 2;  // wavepacket: dichotomy incomplete; selfcheck: a suite failed
inline constexpr int not_elliptic = 3;
inline constexpr int inconclusive = 4;
inline constexpr int irregular = 5;
inline constexpr int elliptic_input = 6;
}  // namespace exit_codes

struct CommandResult {
  int exit_code = exit_codes::ok;
  json report;
  std::vector<std::string> messages;  // human-readable summary lines
  std::vector<std::string> warnings;
  std::string csv;                    // optional table
};

struct AnalyzeOptions {
  std::string path;
  double delta_min = 1e-4;
  int samples = 64;  // slice directions per facet
  int radii = 32;
  double R = kLargeXi;
  std::uint64_t seed = 20240601;
};
CommandResult cmd_analyze(const AnalyzeOptions& opts);

struct BoundsOptions {
  std::optional<std::string> path;
  std::optional<Rational> mu;  // needed for l-rows without a system file
  double s = 1.0;
  double C = 1.0;
  std::optional<double> sigma;
  std::optional<std::pair<int, int>> l_range;  // inclusive; empty when first > second
  std::vector<MultiIndex> alphas;
};
CommandResult cmd_bounds(const BoundsOptions& opts);

struct WavepacketOptions {
  std::string path;
  Rational s = 2;
  Rational sigma = 1;
  std::optional<Eigen::VectorXd> xi0;   // explicit witness
  std::optional<RationalVector> q;      // facet for an explicit witness
  std::optional<MultiIndex> alpha;      // derivative direction; default a facet vertex
  std::vector<int> m_values;            // empty: default sweep
  int k_max = 8;
  std::vector<double> C_values = {1, 10, 100};
  std::optional<double> s_prime;        // default 1/(mu eta) + 0.1
  double delta_min = 1e-4;
  std::uint64_t seed = 20240601;
};
/// 1..50, then geometric steps of 6/5 up to m_max.
std::vector<int> default_m_sweep(int m_max = 30000);
CommandResult cmd_wavepacket(const WavepacketOptions& opts);

struct SelfcheckCommandOptions {
  std::string data_dir = MQE_DATA_DIR;
  std::uint64_t seed = 20240601;
};
CommandResult cmd_selfcheck(const SelfcheckCommandOptions& opts);

/// "1,2" or "(1,2)" to a multi-index; "1/2,1/2" to rationals; "0.6,-0.8" to doubles.
MultiIndex parse_multi_index(const std::string& text);
RationalVector parse_rational_list(const std::string& text);
Eigen::VectorXd parse_double_list(const std::string& text);
/// "a..b" inclusive.
std::pair<int, int> parse_range(const std::string& text);

}  // namespace mqe
