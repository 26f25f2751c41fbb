#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ulab/ineq_lab.hpp"

namespace ulab {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Experiment kinds accepted by run_config, in a stable order.
const std::vector<std::string>& experiment_kinds();

/// Validates a config document and fills every omitted optional field with its default.
/// Unknown fields and missing required fields are ConfigErrors. The result is a fixed point:
/// normalize_config(normalize_config(c)) == normalize_config(c).
nlohmann::json normalize_config(const nlohmann::json& raw);

/// Applies "key=value" (dotted keys address nested objects). The value is parsed as JSON and
/// falls back to a plain string.
void apply_override(nlohmann::json& config, const std::string& assignment);

/// Runs the experiment described by a config (normalized first).
InequalityReport run_config(const nlohmann::json& config);

struct Preset {
    std::string name;
    std::string description;
    nlohmann::json config;
};

const std::vector<Preset>& presets();

/// Throws ConfigError for unknown names.
const Preset& find_preset(const std::string& name);

/// Manifest: config echo, artifact version, timestamp, rows, summary and verdicts.
nlohmann::json make_manifest(const nlohmann::json& config, const InequalityReport& report,
                             const std::string& timestamp);

/// RFC-4180 table with header parameter,lhs,rhs,ratio and 17 significant digits.
std::string report_csv(const InequalityReport& report);

/// "1" -> 1.0, "inf" -> infinity; JSON numbers pass through.
double json_number(const nlohmann::json& value, const std::string& field);

}  // namespace ulab
