#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mqe {

struct SuiteResult {
  std::string name;
  bool passed = true;
  long checks = 0;
  long failures = 0;
  std::string detail;  // first failure, if any
  double seconds = 0.0;
};

struct SelfcheckOptions {
  std::string data_dir;  // bundled .sys files; empty skips the examples suite
  std::uint64_t seed = 20240601;
};

SuiteResult suite_examples(const std::string& data_dir);
SuiteResult suite_hull_oracle(std::uint64_t seed, int systems = 40);
SuiteResult suite_gauge_oracle(std::uint64_t seed, int polyhedra = 6, int alphas = 20);
SuiteResult suite_gauge_laws(std::uint64_t seed);
SuiteResult suite_quasi_homogeneity(std::uint64_t seed);
SuiteResult suite_parser_round_trip(std::uint64_t seed);
SuiteResult suite_gamma_identities(std::uint64_t seed);
SuiteResult suite_convexity(std::uint64_t seed, int points = 10000);
SuiteResult suite_quadrature_gamma();
SuiteResult suite_recursion_fd(std::uint64_t seed);

/// Runs every suite in a fixed order.
std::vector<SuiteResult> run_selfcheck(const SelfcheckOptions& opts);

}  // namespace mqe
