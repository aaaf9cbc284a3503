#include "mqe/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mqe/selfcheck.hpp"

namespace mqe {

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string str(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string str(const Eigen::VectorXd& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + short_fmt(v[i]);
  return s + ")";
}

std::vector<std::string> split_list(std::string text) {
  std::erase_if(text, [](char c) { return c == '(' || c == ')' || c == ' ' || c == '\t'; });
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) throw std::invalid_argument("empty entry in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

CommandResult input_failure(CommandResult r, const std::string& message) {
  r.exit_code = exit_codes::input_error;
  r.report["error"] = message;
  r.messages.push_back("error: " + message);
  return r;
}

// Loads a system; on failure fills r as an input error and returns nullopt.
std::optional<SymbolSystem> load(const std::string& path, CommandResult& r) {
  try {
    return load_system(path);
  } catch (const ParseError& e) {
    r = input_failure(std::move(r), path + ": " + e.what());
    r.report["error_position"] = {{"line", e.line()}, {"column", e.column()}};
  } catch (const std::exception& e) {
    r = input_failure(std::move(r), e.what());
  }
  return std::nullopt;
}

bool regular_or_fail(const NewtonPolyhedron& F, CommandResult& r) {
  if (F.regular) return true;
  r.exit_code = exit_codes::irregular;
  r.messages.push_back("polyhedron is not regular: " + F.diagnostic);
  return false;
}

void describe_polyhedron(const NewtonPolyhedron& F, CommandResult& r) {
  std::string facets;
  for (const auto& q : F.facet_normals) facets += (facets.empty() ? "" : " ") + str(q);
  r.messages.push_back("facet normals: " + facets);
  if (F.indices)
    r.messages.push_back("mu = " + to_string(F.indices->mu) + ", theta = " + str(F.indices->theta) +
                         ", k(e) = " + to_string(F.indices->sobolev_index));
}

}  // namespace

MultiIndex parse_multi_index(const std::string& text) {
  std::vector<int> e;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size() || v < 0) throw std::invalid_argument("bad multi-index entry '" + item + "'");
    e.push_back(v);
  }
  return MultiIndex(e);
}

RationalVector parse_rational_list(const std::string& text) {
  RationalVector out;
  for (const auto& item : split_list(text)) out.push_back(parse_rational(item));
  return out;
}

Eigen::VectorXd parse_double_list(const std::string& text) {
  auto items = split_list(text);
  Eigen::VectorXd v(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::size_t used = 0;
    v[static_cast<Eigen::Index>(i)] = std::stod(items[i], &used);
    if (used != items[i].size()) throw std::invalid_argument("bad number '" + items[i] + "'");
  }
  return v;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b");
  std::size_t u1 = 0, u2 = 0;
  const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
  const int lo = std::stoi(a, &u1), hi = std::stoi(b, &u2);
  if (u1 != a.size() || u2 != b.size() || lo < 0) throw std::invalid_argument("bad range '" + text + "'");
  return {lo, hi};
}

CommandResult cmd_analyze(const AnalyzeOptions& opts) {
  CommandResult r;
  r.report = report_header("analyze");
  r.report["config"] = {{"delta_min", opts.delta_min}, {"samples", opts.samples}, {"radii", opts.radii},
                        {"R", opts.R},                 {"seed", opts.seed}};
  auto sys = load(opts.path, r);
  if (!sys) return r;
  r.report["input"] = input_json(opts.path, *sys);
  const auto F = build_polyhedron(*sys);
  r.report["polyhedron"] = polyhedron_json(F);
  if (!regular_or_fail(F, r)) return r;
  describe_polyhedron(F, r);

  EllipticityConfig cfg;
  cfg.delta_min = opts.delta_min;
  SamplerConfig sc;
  sc.directions = opts.samples;
  sc.radii = opts.radii;
  sc.seed = opts.seed;
  try {
    const auto verdict = check_proposition(*sys, F, cfg);
    const auto est = check_inequality(*sys, F, opts.R, sc);
    r.report["ellipticity"] = ellipticity_json(verdict);
    r.report["inequality"] = inequality_json(est);
    r.report["concordant"] = concordant(verdict, est);
    for (const auto& f : verdict.per_facet)
      r.messages.push_back("facet " + str(f.q) + ": " + to_string(f.status) + ", certified min " +
                           short_fmt(f.min_certified) + " at delta " + short_fmt(f.delta));
    r.messages.push_back("verdict: " + to_string(verdict.status));
    if (verdict.witness)
      r.messages.push_back("witness on facet " + str(verdict.witness->q) + ": xi0 = " + str(verdict.witness->xi0));
    r.messages.push_back("sampled V/sum|P_j|: C_hat = " + short_fmt(est.C_hat) + ", growth " + short_fmt(est.growth()) +
                         (est.bounded() ? " (bounded)" : " (unbounded)"));
    switch (verdict.status) {
      case EllipticityStatus::Elliptic: r.exit_code = exit_codes::ok; break;
      case EllipticityStatus::NotElliptic: r.exit_code = exit_codes::not_elliptic; break;
      case EllipticityStatus::Inconclusive: r.exit_code = exit_codes::inconclusive; break;
    }
  } catch (const std::invalid_argument& e) {
    return input_failure(std::move(r), e.what());
  }
  return r;
}

CommandResult cmd_bounds(const BoundsOptions& opts) {
  CommandResult r;
  r.report = report_header("bounds");
  json config = {{"s", opts.s}, {"C", opts.C}};
  if (opts.sigma) config["sigma"] = *opts.sigma;
  if (opts.l_range) config["l_range"] = {opts.l_range->first, opts.l_range->second};
  r.report["config"] = config;

  GevreyParams p{opts.s, opts.sigma.value_or(1.0), opts.C};
  try {
    validate(p);
  } catch (const std::invalid_argument& e) {
    return input_failure(std::move(r), e.what());
  }
  if (opts.s < 1.0) r.warnings.push_back("s < 1: the bound classes are defined but the theorems assume s >= 1");
  if (opts.sigma) r.report["hypothesis"] = theorem_hypothesis(opts.s, *opts.sigma);

  std::optional<NewtonPolyhedron> F;
  if (opts.path) {
    auto sys = load(*opts.path, r);
    if (!sys) return r;
    r.report["input"] = input_json(*opts.path, *sys);
    F = build_polyhedron(*sys);
    r.report["polyhedron"] = polyhedron_json(*F);
    if (!regular_or_fail(*F, r)) return r;
  }
  std::optional<Rational> mu = opts.mu;
  if (!mu && F) mu = F->indices->mu;
  if (opts.mu && F && *opts.mu != F->indices->mu)
    r.warnings.push_back("--mu overrides the polyhedron's mu = " + to_string(F->indices->mu));
  if (opts.l_range && !mu) return input_failure(std::move(r), "l rows need --mu or a system file");
  if (!opts.alphas.empty() && !F) return input_failure(std::move(r), "alpha rows need a system file");
  if (mu && *mu <= 0) return input_failure(std::move(r), "mu must be positive");

  json rows = json::array();
  std::string csv = "kind,index,k,log_bound,bound\n";
  if (opts.l_range) {
    const double m = to_double(*mu);
    for (int l = opts.l_range->first; l <= opts.l_range->second; ++l) {
      const double lb = log_iterate_bound(l, m, p);
      rows.push_back({{"kind", "l"}, {"l", l}, {"log_bound", float_json(lb)}, {"bound", float_json(std::exp(lb))}});
      csv += "l," + std::to_string(l) + ",," + fmt(lb) + "," + fmt(std::exp(lb)) + "\n";
      r.messages.push_back("l = " + std::to_string(l) + ": bound " + short_fmt(std::exp(lb)) + ", log " + short_fmt(lb));
    }
  }
  for (const auto& alpha : opts.alphas) {
    if (alpha.size() != F->dim)
      return input_failure(std::move(r), "alpha " + to_string(alpha) + " has the wrong dimension");
    const Rational k = k_of(*F, alpha);
    const double lb = log_derivative_bound(alpha, *F, p);
    rows.push_back({{"kind", "alpha"},
                    {"alpha", to_json(alpha)},
                    {"k", to_json(k)},
                    {"log_bound", float_json(lb)},
                    {"bound", float_json(std::exp(lb))}});
    std::string idx = "\"" + to_string(alpha) + "\"";
    csv += "alpha," + idx + "," + to_string(k) + "," + fmt(lb) + "," + fmt(std::exp(lb)) + "\n";
    r.messages.push_back("alpha = " + to_string(alpha) + ", k = " + to_string(k) + ": bound " + short_fmt(std::exp(lb)) +
                         ", log " + short_fmt(lb));
  }
  json bounds = {{"s", float_json(opts.s)}, {"C", float_json(opts.C)}};
  bounds["mu"] = mu ? to_json(*mu) : json(nullptr);
  bounds["rows"] = rows;
  bounds["exactness"] = {{"s", kFloat}, {"C", kFloat}, {"mu", kRational}, {"k", kRational},
                         {"log_bound", kFloat}, {"bound", kFloat}};
  r.report["bounds"] = bounds;
  if (!r.warnings.empty()) r.report["warnings"] = r.warnings;
  r.csv = csv;
  if (rows.empty()) r.messages.push_back("empty table");
  return r;
}

std::vector<int> default_m_sweep(int m_max) {
  std::vector<int> ms;
  for (int m = 1; m <= m_max; m = m < 50 ? m + 1 : m * 6 / 5) ms.push_back(m);
  return ms;
}

CommandResult cmd_wavepacket(const WavepacketOptions& opts) {
  CommandResult r;
  r.report = report_header("wavepacket");
  json config = {{"s", to_json(opts.s)},
                 {"sigma", to_json(opts.sigma)},
                 {"k_max", opts.k_max},
                 {"C", opts.C_values},
                 {"delta_min", opts.delta_min},
                 {"seed", opts.seed}};
  if (opts.s_prime) config["s_prime"] = *opts.s_prime;
  if (opts.xi0) config["xi0"] = float_json(*opts.xi0);
  if (opts.q) config["q"] = to_json(*opts.q);
  if (opts.alpha) config["alpha"] = to_json(*opts.alpha);
  r.report["config"] = config;
  if (!(opts.s > opts.sigma && opts.sigma >= 1))
    return input_failure(std::move(r), "need s > sigma >= 1 (got s = " + to_string(opts.s) +
                                           ", sigma = " + to_string(opts.sigma) + ")");
  if (opts.C_values.empty()) return input_failure(std::move(r), "need at least one C");

  auto sys = load(opts.path, r);
  if (!sys) return r;
  r.report["input"] = input_json(opts.path, *sys);
  const auto F = build_polyhedron(*sys);
  r.report["polyhedron"] = polyhedron_json(F);
  if (!regular_or_fail(F, r)) return r;

  EllipticityConfig cfg;
  cfg.delta_min = opts.delta_min;
  EllipticityVerdict verdict;
  try {
    verdict = check_proposition(*sys, F, cfg);
  } catch (const std::invalid_argument& e) {
    return input_failure(std::move(r), e.what());
  }
  r.report["ellipticity"] = ellipticity_json(verdict);
  if (verdict.status == EllipticityStatus::Elliptic) {
    r.exit_code = exit_codes::elliptic_input;
    r.messages.push_back("system is multi-quasi-elliptic: no counterexample exists");
    return r;
  }

  RationalVector q;
  Eigen::VectorXd xi0;
  if (opts.xi0) {
    if (opts.q) q = *opts.q;
    else if (F.facet_normals.size() == 1) q = F.facet_normals.front();
    else return input_failure(std::move(r), "several facets: pass --q with the witness");
    xi0 = *opts.xi0;
  } else if (verdict.witness) {
    const auto w = witness_for_wavepacket(verdict);
    q = w.q;
    xi0 = w.xi0;
  } else {
    r.exit_code = exit_codes::inconclusive;
    r.messages.push_back("ellipticity is inconclusive; pass an explicit witness with --xi0");
    return r;
  }

  std::optional<WavepacketSpec> spec;
  WavepacketParameters params;
  try {
    params = choose_parameters(opts.s, opts.sigma, F, *sys, q);
    spec = make_wavepacket_spec(F, *sys, q, xi0, opts.s, opts.sigma);
  } catch (const std::invalid_argument& e) {
    return input_failure(std::move(r), e.what());
  }
  double part_value = 0.0;
  for (const auto& P : *sys) part_value += std::abs(evaluate(qh_part(P, q).part, spec->xi0));
  r.report["witness"] = {{"q", to_json(q)}, {"xi0", float_json(spec->xi0)}, {"part_value", float_json(part_value)},
                         {"source", opts.xi0 ? "explicit" : "ellipticity"}};
  r.report["parameters"] = parameters_json(params);
  r.messages.push_back("witness on facet " + str(q) + ": xi0 = " + str(spec->xi0) + ", sum |P_jq| = " +
                       short_fmt(part_value));
  r.messages.push_back("epsilon = " + to_string(params.epsilon) + ", eta = " + to_string(params.eta));

  MultiIndex alpha;
  if (opts.alpha) {
    alpha = *opts.alpha;
  } else {
    for (const auto& v : F.vertices)
      if (!v.is_zero() && dot(v, q) == 1) {
        alpha = v;
        break;
      }
  }
  const auto ms = opts.m_values.empty() ? default_m_sweep() : opts.m_values;
  const double s = to_double(opts.s);
  const double mu = to_double(spec->mu);
  const double s_prime = opts.s_prime.value_or(1.0 / (mu * to_double(spec->eta)) + 0.1);

  std::optional<ViolationReport> at_s, at_sp;
  try {
    at_s = gevrey_violation_check(*spec, alpha, ms, s, opts.C_values);
    at_sp = gevrey_violation_check(*spec, alpha, ms, s_prime, opts.C_values);
  } catch (const std::invalid_argument& e) {
    return input_failure(std::move(r), e.what());
  }
  const auto threshold = lower_bound_threshold(*spec, alpha, ms);
  const bool violated = at_s->violated_for_all_C();
  const bool member = at_sp->bounded_for_some_C();
  r.report["violation_at_s"] = violation_json(*at_s);
  r.report["membership_at_s_prime"] = violation_json(*at_sp);
  r.report["large_m_threshold"] = threshold ? json(*threshold) : json(nullptr);

  for (std::size_t c = 0; c < at_s->per_C.size(); ++c) {
    const auto& e = at_s->per_C[c];
    const auto first = e.first_exceedance();
    r.messages.push_back("s = " + short_fmt(s) + ", C = " + short_fmt(e.C) + ": " +
                         (first ? "first exceedance at m = " + std::to_string(*first) : "no exceedance in the sweep"));
  }
  for (const auto& e : at_sp->per_C) {
    const auto first = e.first_exceedance();
    r.messages.push_back("s' = " + short_fmt(s_prime) + ", C = " + short_fmt(e.C) + ": " +
                         (first ? "first exceedance at m = " + std::to_string(*first) : "bounded over the sweep"));
  }

  // iterate growth along P_0, P_1, ... (round robin)
  const auto bump = make_bump(spec->dim(), spec->delta, kBumpMaxOrder);
  std::vector<double> log_norms;
  json iterates = json::array();
  ACoefficients a = iterate_coefficients(*spec, *sys, {});
  for (int k = 0; k <= opts.k_max; ++k) {
    if (k > 0) a = apply_symbol(*spec, (*sys)[static_cast<std::size_t>(k - 1) % sys->size()], a);
    if (a.max_order() > bump.max_order()) {
      r.warnings.push_back("iterates stop at k = " + std::to_string(k - 1) + ": bump derivatives are capped at order " +
                           std::to_string(bump.max_order()));
      break;
    }
    const double ln = log_iterate_norm_estimate(a, *spec, bump);
    log_norms.push_back(ln);
    iterates.push_back({{"k", k}, {"log_norm", float_json(ln)}});
  }
  GrowthFit fit;
  fit.degenerate = true;
  if (log_norms.size() >= 4) fit = fit_growth_log(log_norms, mu);
  else r.warnings.push_back("growth fit needs at least 4 iterate levels");
  const double exponent = fit.s_fit * mu;
  const bool within_shape = !fit.degenerate && exponent <= s * mu + 0.25;
  r.report["iterates"] = {{"levels", iterates},
                          {"C_fit", float_json(fit.C_fit)},
                          {"s_fit", float_json(fit.s_fit)},
                          {"exponent", float_json(exponent)},
                          {"exponent_limit", float_json(s * mu + 0.25)},
                          {"residual", float_json(fit.residual)},
                          {"degenerate", fit.degenerate},
                          {"within_shape", within_shape},
                          {"exactness", {{"log_norm", kFloat}, {"C_fit", kFloat}, {"s_fit", kFloat}}}};
  if (fit.degenerate)
    r.messages.push_back("iterate fit: not enough levels");
  else
    r.messages.push_back("iterate fit: exponent on log k! = " + short_fmt(exponent) + " (limit " +
                         short_fmt(s * mu + 0.25) + ")" + (within_shape ? "" : " exceeded"));

  const bool observed = violated && member;
  r.report["dichotomy"] = {{"violated_at_s", violated},
                           {"bounded_at_s_prime", member},
                           {"s", float_json(s)},
                           {"s_prime", float_json(s_prime)},
                           {"observed", observed}};
  r.messages.push_back(observed ? "dichotomy observed" : "dichotomy not observed in this sweep");
  r.exit_code = observed ? exit_codes::ok : exit_codes::not_observed;
  if (!r.warnings.empty()) r.report["warnings"] = r.warnings;

  std::string csv = "m,log_derivative";
  for (double C : opts.C_values) csv += ",log_bound_s_C" + short_fmt(C);
  for (double C : opts.C_values) csv += ",log_bound_s_prime_C" + short_fmt(C);
  csv += "\n";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    csv += std::to_string(ms[i]) + "," + fmt(at_s->log_derivative[i]);
    for (const auto& e : at_s->per_C) csv += "," + fmt(e.log_bound[i]);
    for (const auto& e : at_sp->per_C) csv += "," + fmt(e.log_bound[i]);
    csv += "\n";
  }
  r.csv = csv;
  return r;
}

CommandResult cmd_selfcheck(const SelfcheckCommandOptions& opts) {
  CommandResult r;
  r.report = report_header("selfcheck");
  r.report["config"] = {{"data_dir", opts.data_dir}, {"seed", opts.seed}};
  const auto results = run_selfcheck({opts.data_dir, opts.seed});
  json suites = json::array();
  bool all = true;
  for (const auto& s : results) {
    all = all && s.passed;
    json j = {{"name", s.name}, {"passed", s.passed}, {"checks", s.checks}, {"failures", s.failures}};
    if (!s.detail.empty()) j["detail"] = s.detail;
    suites.push_back(j);
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-34s %7ld checks  %6.2f s", s.passed ? "ok" : "FAIL", s.name.c_str(),
                  s.checks, s.seconds);
    r.messages.push_back(line);
    if (!s.detail.empty()) r.messages.push_back("     " + s.detail);
  }
  r.report["suites"] = suites;
  r.report["passed"] = all;
  r.exit_code = all ? exit_codes::ok : exit_codes::not_observed;
  return r;
}

}  // namespace mqe
