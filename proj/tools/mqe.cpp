#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mqe/commands.hpp"

using namespace mqe;

namespace {

struct Output {
  bool json = false;
  std::string out;
  std::string csv;
};

void add_output(CLI::App* cmd, Output& o, bool with_csv) {
  cmd->add_flag("--json", o.json, "Print the JSON report instead of the summary");
  cmd->add_option("--out", o.out, "Write the JSON report to this file");
  if (with_csv) cmd->add_option("--csv", o.csv, "Write the table as CSV to this file ('-' for stdout)");
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

int emit(const CommandResult& r, const Output& o) {
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  const bool csv_stdout = o.csv == "-";
  if (o.json) std::cout << dump(r.report);
  else if (r.exit_code == exit_codes::input_error)
    for (const auto& m : r.messages) std::cerr << m << "\n";
  else if (!csv_stdout)
    for (const auto& m : r.messages) std::cout << m << "\n";
  if (!o.out.empty() && !write_file(o.out, dump(r.report))) return exit_codes::input_error;
  if (!o.csv.empty() && !r.csv.empty()) {
    if (csv_stdout) std::cout << r.csv;
    else if (!write_file(o.csv, r.csv)) return exit_codes::input_error;
  }
  return r.exit_code;
}

double number(const std::string& text) { return to_double(parse_rational(text)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton polyhedra, multi-quasi-ellipticity and Gevrey iterate bounds for systems of symbols"};
  app.set_config("--config", "", "Read options from a TOML-style file");
  app.require_subcommand(1);
  Output out;

  AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Polyhedron, indices and ellipticity verdict for a system file");
  analyze->add_option("file", an.path, "System file")->required();
  analyze->add_option("--delta-min", an.delta_min, "Smallest margin for the positivity certificate");
  analyze->add_option("--samples", an.samples, "Slice directions per facet for the sampled inequality");
  analyze->add_option("--radii", an.radii, "Shells in the sampled inequality");
  analyze->add_option("--R", an.R, "Lower bound on |xi| for the sampled inequality");
  analyze->add_option("--seed", an.seed, "Sampler seed");
  add_output(analyze, out, false);

  BoundsOptions bo;
  std::string b_file, b_s = "1", b_mu, b_range, b_sigma;
  std::vector<double> b_C;
  std::vector<std::string> b_alpha;
  auto* bounds = app.add_subcommand("bounds", "Tables of log-bounds C^{l+1}(l!)^{s mu} and C^{|a|+1}Gamma(mu k(a)+1)^s");
  bounds->add_option("file", b_file, "System file (needed for --alpha rows)");
  bounds->add_option("--s", b_s, "Gevrey index");
  bounds->add_option("--C", b_C, "Bound constant")->expected(1);
  bounds->add_option("--sigma", b_sigma, "Coefficient class; reports which hypothesis (s, sigma) satisfies");
  bounds->add_option("--mu", b_mu, "Formal order mu (defaults to the polyhedron's)");
  bounds->add_option("--l", b_range, "Iterate orders a..b");
  bounds->add_option("--alpha", b_alpha, "Multi-index, e.g. 2,0 (repeatable)");
  add_output(bounds, out, true);

  WavepacketOptions wo;
  std::string w_s = "2", w_sigma = "1", w_xi0, w_q, w_alpha;
  std::vector<int> w_m;
  int w_m_max = 30000;
  double w_s_prime = 0.0;
  std::vector<double> w_C;
  auto* wave = app.add_subcommand("wavepacket", "Wave-packet counterexample for a non-elliptic system");
  wave->add_option("file", wo.path, "System file")->required();
  wave->add_option("--s", w_s, "Gevrey index s (rational)");
  wave->add_option("--sigma", w_sigma, "Coefficient class sigma (rational)");
  wave->add_option("--xi0", w_xi0, "Explicit witness direction, e.g. 1,1");
  wave->add_option("--q", w_q, "Facet normal for an explicit witness, e.g. 1/2,1/2");
  wave->add_option("--alpha", w_alpha, "Derivative direction on the facet");
  wave->add_option("--m", w_m, "Explicit m values");
  wave->add_option("--m-max", w_m_max, "Largest m of the default sweep");
  wave->add_option("--k-max", wo.k_max, "Largest iterate level");
  wave->add_option("--C", w_C, "Bound constants (repeatable)");
  wave->add_option("--s-prime", w_s_prime, "Comparison index for the membership half");
  wave->add_option("--delta-min", wo.delta_min, "Smallest margin for the ellipticity check");
  wave->add_option("--seed", wo.seed, "Seed (recorded in the report)");
  add_output(wave, out, true);

  SelfcheckCommandOptions so;
  auto* self = app.add_subcommand("selfcheck", "Run the bundled invariant suites");
  self->add_option("--data-dir", so.data_dir, "Directory of .sys files to validate");
  self->add_option("--seed", so.seed, "Seed for the randomized suites");
  add_output(self, out, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_codes::input_error;
  }

  try {
    if (*analyze) return emit(cmd_analyze(an), out);
    if (*bounds) {
      if (!b_file.empty()) bo.path = b_file;
      bo.s = number(b_s);
      if (!b_C.empty()) bo.C = b_C.front();
      if (!b_sigma.empty()) bo.sigma = number(b_sigma);
      if (!b_mu.empty()) bo.mu = parse_rational(b_mu);
      if (!b_range.empty()) bo.l_range = parse_range(b_range);
      for (const auto& a : b_alpha) bo.alphas.push_back(parse_multi_index(a));
      return emit(cmd_bounds(bo), out);
    }
    if (*wave) {
      wo.s = parse_rational(w_s);
      wo.sigma = parse_rational(w_sigma);
      if (!w_xi0.empty()) wo.xi0 = parse_double_list(w_xi0);
      if (!w_q.empty()) wo.q = parse_rational_list(w_q);
      if (!w_alpha.empty()) wo.alpha = parse_multi_index(w_alpha);
      wo.m_values = w_m.empty() ? default_m_sweep(w_m_max) : w_m;
      if (!w_C.empty()) wo.C_values = w_C;
      if (wave->count("--s-prime")) wo.s_prime = w_s_prime;
      return emit(cmd_wavepacket(wo), out);
    }
    if (*self) return emit(cmd_selfcheck(so), out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_codes::input_error;
  }
  return exit_codes::input_error;
}
