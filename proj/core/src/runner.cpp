#include "qsteer/runner.hpp"

#include "qsteer/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qsteer {

namespace {

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream file(path);
    if (!file) {
        throw std::runtime_error("cannot open file: " + path.string());
    }
    return nlohmann::json::parse(file);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream file(path);
    if (!file) {
        throw std::runtime_error("cannot write file: " + path.string());
    }
    file << text;
    if (!file) {
        throw std::runtime_error("failed while writing: " + path.string());
    }
}

std::string format_number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.10g", value);
    return buffer;
}

} // namespace

nlohmann::json run_simulate(const std::filesystem::path& config_path,
                            const std::filesystem::path& out_dir,
                            const SimulateOverrides& overrides) {
    auto config = read_json_file(config_path).get<ExperimentConfig>();
    if (overrides.seed) {
        config.rng_seed = *overrides.seed;
    }
    if (overrides.events_per_setting) {
        config.events_per_setting = *overrides.events_per_setting;
        if (config.events_per_setting < 1) {
            throw std::invalid_argument("events-per-setting must be >= 1");
        }
    }

    const auto tables = simulate_experiment(config);

    std::filesystem::create_directories(out_dir);
    save_count_tables(out_dir / "counts.csv", tables);

    RunManifest manifest = RunManifest::create();
    manifest.seed = config.rng_seed;
    manifest.source = {{"config", config}};
    const nlohmann::json manifest_json = manifest_to_json(manifest);
    write_text_file(out_dir / "manifest.json", manifest_json.dump(2) + "\n");
    return manifest_json;
}

nlohmann::json run_analyze(const std::filesystem::path& tables_path, const AnalyzeRequest& request) {
    auto tables = load_count_tables(tables_path);
    if (request.n_settings > 0) {
        if (static_cast<std::size_t>(request.n_settings) > tables.size()) {
            throw std::invalid_argument("requested more settings than the file provides");
        }
        tables.resize(static_cast<std::size_t>(request.n_settings));
    }

    ReportOptions options;
    options.w = request.w;
    options.sigma_w = request.sigma_w;
    options.epsilon = request.epsilon;
    options.sigma_epsilon = request.sigma_epsilon;
    options.mode = significance_mode_from_string(request.significance_mode);
    options.bootstrap_replicates = request.bootstrap_replicates;
    options.seed = request.seed;
    dead_time_model_from_string(request.dead_time_model); // validate the flag

    const SteeringReport report = make_report(tables, options);

    RunManifest manifest = RunManifest::create();
    manifest.seed = request.seed;
    manifest.significance_mode = request.significance_mode;
    manifest.dead_time_model = request.dead_time_model;
    manifest.source = {{"tables_path", tables_path.string()}};
    manifest.parameters = {{"w", request.w},
                           {"sigma_w", request.sigma_w},
                           {"epsilon", request.epsilon},
                           {"sigma_epsilon", request.sigma_epsilon},
                           {"n_settings", report.n_settings},
                           {"bootstrap_replicates", request.bootstrap_replicates}};
    return report_to_json(report, manifest);
}

nlohmann::json run_bound(double w, double sigma_w, double epsilon, double sigma_epsilon,
                         int n_settings) {
    return {{"N", n_settings},
            {"w", w},
            {"epsilon", epsilon},
            {"bound", corrected_bound(w, epsilon, n_settings)},
            {"bound_sigma", bound_sigma(w, sigma_w, epsilon, sigma_epsilon, n_settings)}};
}

std::string run_threshold(int n_settings, double eta_min, double eta_max, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("threshold: steps must be >= 1");
    }
    if (!(eta_min > 0.0 && eta_min <= eta_max && eta_max <= 1.0)) {
        throw std::invalid_argument("threshold: need 0 < eta_min <= eta_max <= 1");
    }
    std::string csv = "eta,v_min\n";
    for (int k = 0; k < steps; ++k) {
        const double eta =
            steps == 1 ? eta_min : eta_min + k * (eta_max - eta_min) / (steps - 1);
        const auto v_min = werner_threshold(n_settings, eta);
        csv += format_number(eta) + ",";
        csv += v_min ? format_number(*v_min) : "unreachable";
        csv += "\n";
    }
    return csv;
}

nlohmann::json run_oracle(const OracleRequest& request) {
    const auto asymmetry = DetectorAsymmetry::from_ratio(request.w);
    const auto geometry = worst_case_directions(request.n_settings, request.epsilon);
    const auto bob_set = MeasurementSet::make(geometry.directions);

    const auto sphere = lhs_max_over_sphere(bob_set, asymmetry, request.grid_nodes);
    const double sweep_max = random_lhs_sweep(bob_set, asymmetry, request.transmission,
                                              request.models, request.seed);
    const double bound = corrected_bound(request.w, request.epsilon, request.n_settings);

    return {{"N", request.n_settings},
            {"w", request.w},
            {"epsilon", request.epsilon},
            {"transmission", request.transmission},
            {"models", request.models},
            {"seed", request.seed},
            {"directions", bob_set.directions},
            {"u_star", geometry.u_star},
            {"worst_case_achieved", geometry.achieved},
            {"sphere_max", sphere.max_value},
            {"sphere_argmax", sphere.argmax},
            {"sweep_max", sweep_max},
            {"corrected_bound", bound},
            {"sound", sweep_max <= bound + 1e-9}};
}

} // namespace qsteer
