#pragma once

#include "qsteer/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace qsteer {

/// Implements the CLI subcommands as library calls so pipelines stay
/// scriptable and testable. Every returned report embeds the manifest that
/// produced it.

struct SimulateOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> events_per_setting;
};

/// Reads a config JSON, simulates, and writes `counts.csv` plus
/// `manifest.json` into `out_dir`. Returns the manifest JSON.
nlohmann::json run_simulate(const std::filesystem::path& config_path,
                            const std::filesystem::path& out_dir,
                            const SimulateOverrides& overrides = {});

struct AnalyzeRequest {
    double w = 1.0;
    double sigma_w = 0.0;
    double epsilon = 0.0;
    double sigma_epsilon = 0.0;
    /// 0 = use every table in the file; otherwise analyze the first N.
    int n_settings = 0;
    std::string significance_mode = "quadrature";
    std::string dead_time_model = "exponential";
    int bootstrap_replicates = 0; // 0 = delta method
    std::uint64_t seed = 0;
};

/// Loads count tables and produces the steering report JSON.
nlohmann::json run_analyze(const std::filesystem::path& tables_path, const AnalyzeRequest& request);

/// Corrected bound and its first-order uncertainty.
nlohmann::json run_bound(double w, double sigma_w, double epsilon, double sigma_epsilon,
                         int n_settings);

/// CSV of (eta, V_min) rows over an inclusive eta grid; V_min is the literal
/// string "unreachable" where even V = 1 cannot violate.
std::string run_threshold(int n_settings, double eta_min, double eta_max, int steps);

struct OracleRequest {
    int n_settings = 3;
    double w = 1.0;
    double epsilon = 0.0;
    double transmission = 1.0;
    int models = 10000;
    std::uint64_t seed = 1;
    int grid_nodes = 20000;
};

/// Runs the full oracle battery on the worst-case geometry for (N, epsilon):
/// random LHS sweep, sphere search, and the analytic bound, with a soundness
/// verdict. Returns the summary JSON.
nlohmann::json run_oracle(const OracleRequest& request);

} // namespace qsteer
