#include "qsteer/io.hpp"

#include "qsteer/version.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsteer {

namespace {

std::string strip(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) {
        fields.push_back(strip(field));
    }
    return fields;
}

long long parse_integer(const std::string& field, std::size_t line_number, const char* what) {
    std::string body = field;
    if (!body.empty() && body.front() == '+') {
        body.erase(body.begin());
    }
    long long value = 0;
    const auto* first = body.data();
    const auto* last = body.data() + body.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || body.empty()) {
        throw std::runtime_error("line " + std::to_string(line_number) + ": " + what +
                                 " must be an integer, got '" + field + "'");
    }
    return value;
}

} // namespace

std::vector<CountTable> parse_count_tables_csv(const std::string& text) {
    std::stringstream stream(text);
    std::string line;
    std::size_t line_number = 0;
    bool header_seen = false;
    std::map<int, CountTable> by_setting;

    while (std::getline(stream, line)) {
        ++line_number;
        const std::string row = strip(line);
        if (row.empty()) {
            continue;
        }
        if (!header_seen) {
            std::string lowered = row;
            std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            lowered.erase(std::remove_if(lowered.begin(), lowered.end(),
                                         [](unsigned char c) { return std::isspace(c); }),
                          lowered.end());
            if (lowered != "setting,a,b,count") {
                throw std::runtime_error("line " + std::to_string(line_number) +
                                         ": expected header 'setting,a,b,count'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_csv_row(row);
        if (fields.size() != 4) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": expected 4 fields 'setting,a,b,count'");
        }
        const long long setting = parse_integer(fields[0], line_number, "setting");
        const long long a = parse_integer(fields[1], line_number, "a");
        const long long b = parse_integer(fields[2], line_number, "b");
        const long long count = parse_integer(fields[3], line_number, "count");
        if (setting < 0) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": setting index must be nonnegative");
        }
        if (a != 1 && a != -1 && a != 0) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": Alice outcome must be +1, -1 or 0");
        }
        if (b != 1 && b != -1) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": Bob outcome must be +1 or -1");
        }
        if (count < 0) {
            throw std::runtime_error("line " + std::to_string(line_number) +
                                     ": count must be nonnegative");
        }
        auto& table = by_setting[static_cast<int>(setting)];
        table.setting = static_cast<int>(setting);
        table.at(static_cast<int>(a), static_cast<int>(b)) += static_cast<std::uint64_t>(count);
    }
    if (!header_seen) {
        throw std::runtime_error("empty count-table file");
    }

    std::vector<CountTable> tables;
    tables.reserve(by_setting.size());
    for (auto& [setting, table] : by_setting) {
        tables.push_back(table);
    }
    return tables;
}

std::vector<CountTable> load_count_tables(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open count-table file: " + path.string());
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parse_count_tables_csv(buffer.str());
}

std::string count_tables_to_csv(const std::vector<CountTable>& tables) {
    std::string out = "setting,a,b,count\n";
    for (const auto& table : tables) {
        for (int a : kAliceOutcomes) {
            for (int b : kBobOutcomes) {
                out += std::to_string(table.setting) + "," + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(table.at(a, b)) + "\n";
            }
        }
    }
    return out;
}

void save_count_tables(const std::filesystem::path& path, const std::vector<CountTable>& tables) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write count-table file: " + path.string());
    }
    file << count_tables_to_csv(tables);
    if (!file) {
        throw std::runtime_error("failed while writing: " + path.string());
    }
}

std::string to_string(SignificanceMode mode) {
    switch (mode) {
    case SignificanceMode::quadrature:
        return "quadrature";
    case SignificanceMode::s_only:
        return "s-only";
    case SignificanceMode::bound_only:
        return "bound-only";
    }
    return "quadrature";
}

SignificanceMode significance_mode_from_string(const std::string& name) {
    if (name == "quadrature") {
        return SignificanceMode::quadrature;
    }
    if (name == "s-only") {
        return SignificanceMode::s_only;
    }
    if (name == "bound-only") {
        return SignificanceMode::bound_only;
    }
    throw std::invalid_argument("unknown significance mode: " + name);
}

std::string to_string(DeadTimeModel model) {
    return model == DeadTimeModel::linear ? "linear" : "exponential";
}

DeadTimeModel dead_time_model_from_string(const std::string& name) {
    if (name == "exponential") {
        return DeadTimeModel::exponential;
    }
    if (name == "linear") {
        return DeadTimeModel::linear;
    }
    throw std::invalid_argument("unknown dead-time model: " + name);
}

RunManifest RunManifest::create() {
    RunManifest manifest;
    manifest.tool_version = std::string(kVersion);
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
    manifest.created_utc = buffer;
    return manifest;
}

nlohmann::json manifest_to_json(const RunManifest& manifest) {
    return {
        {"tool_version", manifest.tool_version},
        {"seed", manifest.seed},
        {"significance_mode", manifest.significance_mode},
        {"dead_time_model", manifest.dead_time_model},
        {"source", manifest.source},
        {"parameters", manifest.parameters},
        {"timestamps", {{"created", manifest.created_utc}}},
    };
}

nlohmann::json report_to_json(const SteeringReport& report, const RunManifest& manifest) {
    nlohmann::json significance; // null when undefined (both sigmas zero)
    if (!std::isnan(report.significance)) {
        significance = report.significance;
    }
    return {
        {"N", report.n_settings},
        {"S", report.s_value},
        {"S_sigma", report.s_sigma},
        {"bound", report.bound},
        {"bound_sigma", report.bound_sigma},
        {"significance", significance},
        {"eta_hat", report.eta_hat},
        {"visibility_hat", report.visibility_hat},
        {"manifest", manifest_to_json(manifest)},
    };
}

void to_json(nlohmann::json& j, const BlochVector& v) {
    j = nlohmann::json::array({v.x, v.y, v.z});
}

void from_json(const nlohmann::json& j, BlochVector& v) {
    if (!j.is_array() || j.size() != 3) {
        throw std::invalid_argument("Bloch vector must be a [x, y, z] array");
    }
    v = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void to_json(nlohmann::json& j, const TwoQubitState& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < 3; ++r) {
        rows.push_back({s.correlation(r, 0), s.correlation(r, 1), s.correlation(r, 2)});
    }
    j = {{"a_local", s.a_local}, {"b_local", s.b_local}, {"correlation", rows}};
}

void from_json(const nlohmann::json& j, TwoQubitState& s) {
    if (j.contains("werner_visibility")) {
        s = werner_state(j.at("werner_visibility").get<double>());
        return;
    }
    s.a_local = j.value("a_local", BlochVector{});
    s.b_local = j.value("b_local", BlochVector{});
    const auto& rows = j.at("correlation");
    if (!rows.is_array() || rows.size() != 3) {
        throw std::invalid_argument("correlation must be a 3x3 array");
    }
    for (int r = 0; r < 3; ++r) {
        const auto& row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 3) {
            throw std::invalid_argument("correlation must be a 3x3 array");
        }
        for (int c = 0; c < 3; ++c) {
            s.correlation(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
}

void to_json(nlohmann::json& j, const BobApparatus& a) {
    j = {{"transmission", a.transmission},
         {"eta_plus", a.eta_plus},
         {"eta_minus", a.eta_minus},
         {"double_click_prob", a.double_click_prob}};
}

void from_json(const nlohmann::json& j, BobApparatus& a) {
    a = BobApparatus::make(j.value("transmission", 1.0), j.value("eta_plus", 1.0),
                           j.value("eta_minus", 1.0), j.value("double_click_prob", 0.0));
}

void to_json(nlohmann::json& j, const LhsComponent& c) {
    j = {{"weight", c.weight}, {"hidden_state", c.hidden_state}, {"responses", c.response}};
}

void from_json(const nlohmann::json& j, LhsComponent& c) {
    c.weight = j.at("weight").get<double>();
    c.hidden_state = j.at("hidden_state").get<BlochVector>();
    c.response = j.at("responses").get<std::vector<std::array<double, 3>>>();
}

void to_json(nlohmann::json& j, const LhsModel& m) {
    j = {{"ensemble", m.ensemble}};
}

void from_json(const nlohmann::json& j, LhsModel& m) {
    m = LhsModel::make(j.at("ensemble").get<std::vector<LhsComponent>>());
}

void to_json(nlohmann::json& j, const AliceDevice& d) {
    if (const auto* honest = std::get_if<HonestAlice>(&d)) {
        j = {{"type", "honest"}, {"heralding", honest->heralding}};
        if (!honest->directions.empty()) {
            j["directions"] = honest->directions;
        }
    } else {
        j = {{"type", "adversarial"}, {"ensemble", std::get<LhsModel>(d).ensemble}};
    }
}

void from_json(const nlohmann::json& j, AliceDevice& d) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "honest") {
        HonestAlice honest;
        honest.heralding = j.at("heralding").get<double>();
        if (j.contains("directions")) {
            honest.directions = j.at("directions").get<std::vector<BlochVector>>();
        }
        d = std::move(honest);
    } else if (type == "adversarial") {
        d = LhsModel::make(j.at("ensemble").get<std::vector<LhsComponent>>());
    } else {
        throw std::invalid_argument("alice type must be 'honest' or 'adversarial'");
    }
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    j = {{"state", c.state},
         {"bob_directions", c.bob_set.directions},
         {"alice", c.alice},
         {"bob_apparatus", c.bob_apparatus},
         {"events_per_setting", c.events_per_setting},
         {"seed", c.rng_seed}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
    auto state = j.at("state").get<TwoQubitState>();
    auto bob_set = MeasurementSet::make(j.at("bob_directions").get<std::vector<BlochVector>>());
    auto alice = j.at("alice").get<AliceDevice>();
    auto apparatus = j.value("bob_apparatus", BobApparatus::ideal());
    c = ExperimentConfig::make(std::move(state), std::move(bob_set), std::move(alice), apparatus,
                               j.at("events_per_setting").get<std::uint64_t>(),
                               j.value("seed", std::uint64_t{0}));
}

} // namespace qsteer
