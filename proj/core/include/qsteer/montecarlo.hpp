#pragma once

#include "qsteer/apparatus.hpp"
#include "qsteer/bloch.hpp"
#include "qsteer/counts.hpp"
#include "qsteer/lhs_model.hpp"

#include <cstdint>
#include <vector>

namespace qsteer {

/// Everything needed for one reproducible run: the shared state, Bob's
/// settings and apparatus, Alice's device model, the expected number of
/// Bob-conclusive events per setting, and the master seed.
struct ExperimentConfig {
    TwoQubitState state;
    MeasurementSet bob_set;
    AliceDevice alice;
    BobApparatus bob_apparatus;
    std::uint64_t events_per_setting = 1;
    std::uint64_t rng_seed = 0;

    /// Validates the cross-field invariants and resolves an honest Alice with
    /// an empty direction list to mirror Bob's settings.
    static ExperimentConfig make(TwoQubitState state, MeasurementSet bob_set, AliceDevice alice,
                                 BobApparatus bob_apparatus, std::uint64_t events_per_setting,
                                 std::uint64_t rng_seed);
};

/// Exact joint distribution P(a, b) for one setting, conditioned on Bob
/// conclusive. Honest Alice with heralding eta measuring the same axes on a
/// Werner state reduces to P(a=+-1, b) = eta (1 - a b V) / 4 and
/// P(0, b) = (1 - eta) / 2. Detector background/dark counts are not modeled
/// separately; they enter as white noise through the state's visibility.
JointTable joint_distribution(const ExperimentConfig& config, int setting);

/// Joint distribution produced by an LHS strategy against Bob's apparatus for
/// one setting, conditioned on Bob conclusive.
JointTable adversarial_joint_distribution(const LhsModel& model, int setting,
                                          const BlochVector& bob_direction, const BobApparatus& app);

/// With probability `prob` a detection is a double click and Bob records a
/// fair coin instead of the underlying outcome. Returns the mixed table;
/// Alice's marginals are unchanged.
JointTable apply_double_click(const JointTable& table, double prob);

/// Each cell drawn independently as Poisson(expected_total * P(a, b)).
/// Deterministic for a fixed seed.
CountTable sample_counts(const JointTable& probs, std::uint64_t expected_total, std::uint64_t seed);

/// One count table per setting, sampled from the double-click-mixed joint
/// distribution with a per-setting substream of the master seed. Cell-wise
/// Poisson sampling of the mixed table has the same law as resolving each
/// double click by a coin flip before tabulation (Poisson thinning).
std::vector<CountTable> simulate_experiment(const ExperimentConfig& config);

} // namespace qsteer
