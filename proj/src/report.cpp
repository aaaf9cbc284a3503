#include "mqe/report.hpp"

#include <cmath>

namespace mqe {

json to_json(const Rational& r) { return to_string(r); }

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

json float_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json float_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(float_json(v[i]));
  return out;
}

json to_json(const MultiIndex& alpha) { return json(alpha.entries()); }

json report_header(const std::string& command) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = {{"name", "mqe"}, {"version", kToolVersion}};
  j["command"] = command;
  return j;
}

json input_json(const std::string& path, const SymbolSystem& system) {
  json symbols = json::array();
  for (const auto& P : system) symbols.push_back(to_string(P));
  return {{"path", path}, {"dim", system.dim()}, {"symbols", symbols}};
}

json polyhedron_json(const NewtonPolyhedron& F) {
  json j;
  json vertices = json::array();
  for (const auto& v : F.vertices) vertices.push_back(to_json(v));
  j["vertices"] = vertices;
  json facets = json::array();
  for (const auto& q : F.facet_normals) facets.push_back(to_json(q));
  j["facets"] = facets;
  j["regular"] = F.regular;
  j["affine_dim"] = F.affine_dim;
  if (!F.diagnostic.empty()) j["diagnostic"] = F.diagnostic;
  if (F.indices) {
    j["mu"] = to_json(F.indices->mu);
    j["mu_per_axis"] = to_json(F.indices->mu_per_axis);
    j["theta"] = to_json(F.indices->theta);
    j["k_e"] = to_json(F.indices->sobolev_index);
  } else {
    j["mu"] = j["mu_per_axis"] = j["theta"] = j["k_e"] = nullptr;
  }
  j["exactness"] = {{"vertices", kRational}, {"facets", kRational}, {"mu", kRational},
                    {"mu_per_axis", kRational}, {"theta", kRational}, {"k_e", kRational}};
  return j;
}

json ellipticity_json(const EllipticityVerdict& v) {
  json j;
  j["status"] = to_string(v.status);
  json facets = json::array();
  for (const auto& f : v.per_facet) {
    json levels = json::array();
    for (const auto& l : f.levels)
      levels.push_back({{"delta", float_json(l.delta)},
                        {"min_certified", float_json(l.min_certified)},
                        {"min_observed", float_json(l.min_observed)},
                        {"certified", l.certified}});
    json parts = json::array();
    for (const auto& p : f.parts) parts.push_back(to_string(p.part));
    json fj = {{"q", to_json(f.q)},
               {"status", to_string(f.status)},
               {"parts", parts},
               {"min_certified", float_json(f.min_certified)},
               {"delta", float_json(f.delta)},
               {"levels", levels},
               {"vanishing_axes", f.vanishing_axes},
               {"boxes", f.boxes}};
    if (f.witness) {
      fj["witness"] = float_json(*f.witness);
      fj["witness_value"] = float_json(f.witness_value);
    }
    if (!f.note.empty()) fj["note"] = f.note;
    facets.push_back(fj);
  }
  j["facets"] = facets;
  if (v.witness)
    j["witness"] = {{"q", to_json(v.witness->q)}, {"xi0", float_json(v.witness->xi0)}};
  else
    j["witness"] = nullptr;
  j["config"] = {{"delta_start", v.config.delta_start}, {"delta_factor", v.config.delta_factor},
                 {"delta_min", v.config.delta_min},     {"witness_tol", v.config.witness_tol},
                 {"near_zero", v.config.near_zero},     {"max_boxes", v.config.max_boxes},
                 {"polish_iterations", v.config.polish_iterations}};
  j["exactness"] = {{"q", kRational}, {"min_certified", kFloat}, {"min_observed", kFloat},
                    {"delta", kFloat}, {"xi0", kFloat}, {"witness_value", kFloat}};
  return j;
}

json inequality_json(const InequalityEstimate& e) {
  json profile = json::array();
  for (const auto& p : e.profile)
    profile.push_back({{"index", p.index}, {"ratio", float_json(p.ratio)}, {"xi_norm", float_json(p.xi_norm)}});
  json j = {{"R", float_json(e.R)},
            {"C_hat", float_json(e.C_hat)},
            {"growth", float_json(e.growth())},
            {"bounded", e.bounded()},
            {"infinite", e.infinite},
            {"samples", e.samples},
            {"worst_ratio_point", float_json(e.worst_ratio_point)},
            {"profile", profile}};
  if (e.zero_denominator) j["zero_denominator"] = float_json(*e.zero_denominator);
  j["exactness"] = {{"R", kFloat}, {"C_hat", kFloat}, {"growth", kFloat}, {"ratio", kFloat}, {"xi_norm", kFloat}};
  return j;
}

json parameters_json(const WavepacketParameters& p) {
  return {{"epsilon", to_json(p.epsilon)},
          {"eta", to_json(p.eta)},
          {"cap_sigma", to_json(p.cap_sigma)},
          {"cap_support", to_json(p.cap_support)},
          {"exactness", {{"epsilon", kRational}, {"eta", kRational}, {"cap_sigma", kRational}, {"cap_support", kRational}}}};
}

json violation_json(const ViolationReport& r) {
  json per_C = json::array();
  for (const auto& s : r.per_C) {
    json lb = json::array();
    for (double x : s.log_bound) lb.push_back(float_json(x));
    auto first = s.first_exceedance();
    per_C.push_back({{"C", float_json(s.C)},
                     {"first_exceedance", first ? json(*first) : json(nullptr)},
                     {"exceedance_count", s.exceedance_orders.size()},
                     {"log_bound", lb}});
  }
  json ld = json::array();
  for (double x : r.log_derivative) ld.push_back(float_json(x));
  return {{"alpha", to_json(r.alpha)},
          {"s", float_json(r.s_compare)},
          {"m", r.m},
          {"log_derivative", ld},
          {"per_C", per_C},
          {"violated_for_all_C", r.violated_for_all_C()},
          {"bounded_for_some_C", r.bounded_for_some_C()},
          {"exactness", {{"s", kFloat}, {"C", kFloat}, {"log_derivative", kFloat}, {"log_bound", kFloat}}}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mqe
