#include "qsteer/montecarlo.hpp"

#include "qsteer/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qsteer {

namespace {

void check_setting(int setting, int n_settings) {
    if (setting < 0 || setting >= n_settings) {
        throw std::invalid_argument("joint_distribution: setting index out of range");
    }
}

JointTable normalized(JointTable table) {
    const double total = table.sum();
    if (!(total > 0.0)) {
        throw std::domain_error("joint_distribution: Bob-conclusive probability vanishes");
    }
    for (auto& row : table.p) {
        row[0] /= total;
        row[1] /= total;
    }
    return table;
}

JointTable honest_joint_distribution(const ExperimentConfig& config, int setting) {
    const auto& alice = std::get<HonestAlice>(config.alice);
    const BlochVector& alice_dir = alice.directions[static_cast<std::size_t>(setting)];
    const BlochVector& bob_dir = config.bob_set.directions[static_cast<std::size_t>(setting)];
    const double eta = alice.heralding;

    JointTable table;
    for (int a : {+1, -1}) {
        // Quantum probability of Alice's (pre-loss) outcome; a zero-weight
        // branch is skipped so the steering formula never divides by zero.
        const double p_a = 0.5 * (1.0 + a * config.state.a_local.dot(alice_dir));
        if (p_a <= 0.0) {
            continue;
        }
        const BlochVector steered = steered_bloch(config.state, alice_dir, a);
        const auto clicks = bob_click_probs(config.bob_apparatus, bob_dir, steered);
        table.at(a, +1) = eta * p_a * clicks.plus;
        table.at(a, -1) = eta * p_a * clicks.minus;
    }
    // Alice inconclusive: Bob holds the unconditioned marginal.
    const auto clicks = bob_click_probs(config.bob_apparatus, bob_dir, config.state.b_local);
    table.at(0, +1) = (1.0 - eta) * clicks.plus;
    table.at(0, -1) = (1.0 - eta) * clicks.minus;
    return normalized(table);
}

} // namespace

ExperimentConfig ExperimentConfig::make(TwoQubitState state, MeasurementSet bob_set, AliceDevice alice,
                                        BobApparatus bob_apparatus, std::uint64_t events_per_setting,
                                        std::uint64_t rng_seed) {
    if (events_per_setting < 1) {
        throw std::invalid_argument("ExperimentConfig: events_per_setting must be >= 1");
    }
    if (!state.has_valid_correlation()) {
        throw std::invalid_argument("ExperimentConfig: correlation matrix has singular values outside [0, 1]");
    }
    const std::size_t n_settings = bob_set.directions.size();
    if (auto* honest = std::get_if<HonestAlice>(&alice)) {
        if (!(honest->heralding >= 0.0 && honest->heralding <= 1.0)) {
            throw std::invalid_argument("ExperimentConfig: heralding efficiency must lie in [0, 1]");
        }
        if (honest->directions.empty()) {
            honest->directions = bob_set.directions;
        } else if (honest->directions.size() == n_settings) {
            for (auto& d : honest->directions) {
                d = BlochVector::unit(d.x, d.y, d.z);
            }
        } else {
            throw std::invalid_argument("ExperimentConfig: Alice needs one direction per Bob setting");
        }
    } else {
        const auto& model = std::get<LhsModel>(alice);
        LhsModel::make(model.ensemble); // revalidate
        if (model.num_settings() != static_cast<int>(n_settings)) {
            throw std::invalid_argument("ExperimentConfig: LHS model must cover one response per setting");
        }
    }
    ExperimentConfig config;
    config.state = std::move(state);
    config.bob_set = std::move(bob_set);
    config.alice = std::move(alice);
    config.bob_apparatus = bob_apparatus;
    config.events_per_setting = events_per_setting;
    config.rng_seed = rng_seed;
    return config;
}

JointTable adversarial_joint_distribution(const LhsModel& model, int setting,
                                          const BlochVector& bob_direction, const BobApparatus& app) {
    check_setting(setting, model.num_settings());
    JointTable table;
    for (const auto& component : model.ensemble) {
        const auto clicks = bob_click_probs(app, bob_direction, component.hidden_state);
        const auto& response = component.response[static_cast<std::size_t>(setting)];
        for (std::size_t row = 0; row < kAliceOutcomes.size(); ++row) {
            table.p[row][0] += component.weight * response[row] * clicks.plus;
            table.p[row][1] += component.weight * response[row] * clicks.minus;
        }
    }
    return normalized(table);
}

JointTable joint_distribution(const ExperimentConfig& config, int setting) {
    check_setting(setting, config.bob_set.size());
    if (std::holds_alternative<HonestAlice>(config.alice)) {
        return honest_joint_distribution(config, setting);
    }
    return adversarial_joint_distribution(std::get<LhsModel>(config.alice), setting,
                                          config.bob_set.directions[static_cast<std::size_t>(setting)],
                                          config.bob_apparatus);
}

JointTable apply_double_click(const JointTable& table, double prob) {
    if (!(prob >= 0.0 && prob < 1.0)) {
        throw std::invalid_argument("apply_double_click: probability must lie in [0, 1)");
    }
    JointTable mixed;
    for (std::size_t row = 0; row < kAliceOutcomes.size(); ++row) {
        const double row_sum = table.p[row][0] + table.p[row][1];
        for (std::size_t col = 0; col < kBobOutcomes.size(); ++col) {
            mixed.p[row][col] = (1.0 - prob) * table.p[row][col] + prob * 0.5 * row_sum;
        }
    }
    return mixed;
}

CountTable sample_counts(const JointTable& probs, std::uint64_t expected_total, std::uint64_t seed) {
    if (expected_total < 1) {
        throw std::invalid_argument("sample_counts: expected_total must be >= 1");
    }
    std::mt19937_64 rng(seed);
    CountTable counts;
    for (std::size_t row = 0; row < kAliceOutcomes.size(); ++row) {
        for (std::size_t col = 0; col < kBobOutcomes.size(); ++col) {
            const double mean = static_cast<double>(expected_total) * probs.p[row][col];
            if (mean > 0.0) {
                std::poisson_distribution<std::uint64_t> poisson(mean);
                counts.n[row][col] = poisson(rng);
            }
        }
    }
    return counts;
}

std::vector<CountTable> simulate_experiment(const ExperimentConfig& config) {
    std::vector<CountTable> tables;
    tables.reserve(static_cast<std::size_t>(config.bob_set.size()));
    for (int setting = 0; setting < config.bob_set.size(); ++setting) {
        const JointTable mixed = apply_double_click(joint_distribution(config, setting),
                                                    config.bob_apparatus.double_click_prob);
        CountTable table = sample_counts(mixed, config.events_per_setting,
                                         derive_seed(config.rng_seed, rng_lane::setting,
                                                     static_cast<std::uint64_t>(setting)));
        table.setting = setting;
        tables.push_back(table);
    }
    return tables;
}

} // namespace qsteer
