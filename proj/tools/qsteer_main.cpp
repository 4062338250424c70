// qsteer: simulate, analyze and verify detection-loophole-free steering runs.
//
// Subcommands: simulate, analyze, bound, threshold, oracle. All scientific
// output is JSON (reports, summaries) or CSV (count tables, curves); errors
// surface as {"error": ...} JSON with nonzero exit status.

#include "qsteer/runner.hpp"
#include "qsteer/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw std::runtime_error("cannot write file: " + out_path);
    }
    file << text;
    if (!file) {
        throw std::runtime_error("failed while writing: " + out_path);
    }
}

void emit_json(const nlohmann::json& payload, const std::string& out_path) {
    emit(payload.dump(2) + "\n", out_path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum steering simulation and analysis toolkit"};
    app.set_version_flag("--version", std::string(qsteer::kVersion));
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "sample count tables for a configured experiment");
    std::string sim_config;
    std::string sim_out_dir;
    std::optional<std::uint64_t> sim_seed;
    std::optional<std::uint64_t> sim_events;
    simulate->add_option("--config", sim_config, "experiment config JSON")->required();
    simulate->add_option("--out", sim_out_dir, "output directory for counts.csv and manifest.json")
        ->required();
    simulate->add_option("--seed", sim_seed, "override the config RNG seed");
    simulate->add_option("--events-per-setting", sim_events,
                         "override the expected Bob-conclusive events per setting");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "compute the steering report for count tables");
    std::string ana_tables;
    std::string ana_out;
    qsteer::AnalyzeRequest request;
    analyze->add_option("--tables", ana_tables, "count-table CSV")->required();
    analyze->add_option("--w", request.w, "detector efficiency ratio max/min");
    analyze->add_option("--sigma-w", request.sigma_w, "one-sigma uncertainty of w");
    analyze->add_option("--epsilon", request.epsilon, "max pairwise overlap of Bob's directions");
    analyze->add_option("--sigma-epsilon", request.sigma_epsilon, "one-sigma uncertainty of epsilon");
    analyze->add_option("-N,--n-settings", request.n_settings,
                        "analyze the first N settings (default: all)");
    analyze->add_option("--significance-mode", request.significance_mode,
                        "quadrature | s-only | bound-only");
    analyze->add_option("--dead-time-model", request.dead_time_model, "exponential | linear");
    analyze->add_option("--bootstrap-replicates", request.bootstrap_replicates,
                        "use a parametric bootstrap with this many replicates for S_sigma");
    analyze->add_option("--seed", request.seed, "bootstrap RNG seed");
    analyze->add_option("--out", ana_out, "write the report here instead of stdout");

    // bound
    auto* bound = app.add_subcommand("bound", "corrected LHS bound for an imperfect apparatus");
    double b_w = 1.0, b_sw = 0.0, b_eps = 0.0, b_seps = 0.0;
    int b_n = 3;
    std::string b_out;
    bound->add_option("--w", b_w, "detector efficiency ratio")->required();
    bound->add_option("--epsilon", b_eps, "max pairwise overlap")->required();
    bound->add_option("-N,--n-settings", b_n, "number of settings (2 or 3)")->required();
    bound->add_option("--sigma-w", b_sw, "one-sigma uncertainty of w");
    bound->add_option("--sigma-epsilon", b_seps, "one-sigma uncertainty of epsilon");
    bound->add_option("--out", b_out, "write the JSON here instead of stdout");

    // threshold
    auto* threshold = app.add_subcommand("threshold", "minimal Werner visibility vs heralding");
    int t_n = 3;
    double t_min = 0.05, t_max = 1.0;
    int t_steps = 96;
    std::string t_out;
    threshold->add_option("-N,--n-settings", t_n, "number of settings (2 or 3)")->required();
    threshold->add_option("--eta-min", t_min, "lowest heralding efficiency");
    threshold->add_option("--eta-max", t_max, "highest heralding efficiency");
    threshold->add_option("--steps", t_steps, "number of grid rows");
    threshold->add_option("--out", t_out, "write the CSV here instead of stdout");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force LHS verification of the bound");
    qsteer::OracleRequest oracle_request;
    std::string o_out;
    oracle->add_option("-N,--n-settings", oracle_request.n_settings, "number of settings (2 or 3)");
    oracle->add_option("--w", oracle_request.w, "detector efficiency ratio");
    oracle->add_option("--epsilon", oracle_request.epsilon, "pairwise overlap of the directions");
    oracle->add_option("--t", oracle_request.transmission, "beam-displacer transmission");
    oracle->add_option("--models", oracle_request.models, "number of random LHS models");
    oracle->add_option("--seed", oracle_request.seed, "sweep RNG seed");
    oracle->add_option("--grid-nodes", oracle_request.grid_nodes, "sphere-search lattice size");
    oracle->add_option("--out", o_out, "write the summary here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) {
            qsteer::SimulateOverrides overrides{sim_seed, sim_events};
            const auto manifest = qsteer::run_simulate(sim_config, sim_out_dir, overrides);
            std::cout << manifest.dump(2) << "\n";
        } else if (analyze->parsed()) {
            emit_json(qsteer::run_analyze(ana_tables, request), ana_out);
        } else if (bound->parsed()) {
            emit_json(qsteer::run_bound(b_w, b_sw, b_eps, b_seps, b_n), b_out);
        } else if (threshold->parsed()) {
            emit(qsteer::run_threshold(t_n, t_min, t_max, t_steps), t_out);
        } else if (oracle->parsed()) {
            emit_json(qsteer::run_oracle(oracle_request), o_out);
        }
    } catch (const std::exception& error) {
        std::cout << nlohmann::json{{"error", error.what()}}.dump(2) << "\n";
        return 1;
    }
    return 0;
}
