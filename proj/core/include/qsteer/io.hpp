#pragma once

#include "qsteer/analysis.hpp"
#include "qsteer/apparatus.hpp"
#include "qsteer/bloch.hpp"
#include "qsteer/counts.hpp"
#include "qsteer/lhs_model.hpp"
#include "qsteer/montecarlo.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace qsteer {

/// Count tables travel as CSV with header `setting,a,b,count`; a in
/// {+1, -1, 0}, b in {+1, -1}. Cells not listed default to zero, duplicate
/// rows accumulate. Tables come back sorted by setting index.
std::vector<CountTable> load_count_tables(const std::filesystem::path& path);
std::vector<CountTable> parse_count_tables_csv(const std::string& text);
void save_count_tables(const std::filesystem::path& path, const std::vector<CountTable>& tables);
std::string count_tables_to_csv(const std::vector<CountTable>& tables);

std::string to_string(SignificanceMode mode);
SignificanceMode significance_mode_from_string(const std::string& name);
std::string to_string(DeadTimeModel model);
DeadTimeModel dead_time_model_from_string(const std::string& name);

/// Provenance block embedded in every report: tool version, master seed,
/// convention flags, and the configuration (or table source) that produced
/// the run. Timestamps live in their own field and are excluded from
/// determinism guarantees.
struct RunManifest {
    std::string tool_version;
    std::uint64_t seed = 0;
    std::string significance_mode = "quadrature";
    std::string dead_time_model = "exponential";
    nlohmann::json source;     // {"config": {...}} or {"tables_path": "..."}
    nlohmann::json parameters; // per-command inputs
    std::string created_utc;

    static RunManifest create(); // fills tool_version and created_utc
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Report serialization with the wire field names
/// {N, S, S_sigma, bound, bound_sigma, significance, eta_hat, visibility_hat,
/// manifest}. NaN significance serializes as null.
nlohmann::json report_to_json(const SteeringReport& report, const RunManifest& manifest);

// JSON bindings for configuration types.
void to_json(nlohmann::json& j, const BlochVector& v);
void from_json(const nlohmann::json& j, BlochVector& v);
void to_json(nlohmann::json& j, const TwoQubitState& s);
void from_json(const nlohmann::json& j, TwoQubitState& s);
void to_json(nlohmann::json& j, const BobApparatus& a);
void from_json(const nlohmann::json& j, BobApparatus& a);
void to_json(nlohmann::json& j, const LhsComponent& c);
void from_json(const nlohmann::json& j, LhsComponent& c);
void to_json(nlohmann::json& j, const LhsModel& m);
void from_json(const nlohmann::json& j, LhsModel& m);
void to_json(nlohmann::json& j, const AliceDevice& d);
void from_json(const nlohmann::json& j, AliceDevice& d);
void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

} // namespace qsteer
