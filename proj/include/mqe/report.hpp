#pragma once

#include <string>

#include <json.hpp>

#include "mqe/ellipticity.hpp"
#include "mqe/wavepacket.hpp"

namespace mqe {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "0.1.0";

/// Exactness tags carried next to every numeric field.
inline constexpr const char* kRational = "rational";
inline constexpr const char* kFloat = "float";

json to_json(const Rational& r);
json to_json(const RationalVector& v);
/// Finite doubles as numbers, others as "inf", "-inf" or "nan".
json float_json(double x);
json float_json(const Eigen::VectorXd& v);
json to_json(const MultiIndex& alpha);

/// Header shared by every report: schema, tool and command.
json report_header(const std::string& command);

json input_json(const std::string& path, const SymbolSystem& system);
json polyhedron_json(const NewtonPolyhedron& F);
json ellipticity_json(const EllipticityVerdict& v);
json inequality_json(const InequalityEstimate& e);
json parameters_json(const WavepacketParameters& p);
json violation_json(const ViolationReport& r);

/// Serializes with two-space indentation and a trailing newline.
std::string dump(const json& j);

}  // namespace mqe
