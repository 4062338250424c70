#pragma once

#include "qsteer/bloch.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace qsteer {

/// One preparation lambda of a local-hidden-state ensemble: the qubit sent to
/// Bob and, per measurement setting, Alice's classical response distribution
/// over the outcomes (+1, -1, 0), in that order.
struct LhsComponent {
    double weight = 1.0;
    BlochVector hidden_state;
    std::vector<std::array<double, 3>> response;
};

/// Convex ensemble of hidden-state preparations. Weights sum to one, each
/// response triple sums to one, each hidden state lies in the Bloch ball.
struct LhsModel {
    std::vector<LhsComponent> ensemble;

    /// Validates the ensemble invariants and the per-component setting count.
    static LhsModel make(std::vector<LhsComponent> ensemble);

    int num_settings() const;
};

/// Deterministic single-preparation model: Bob receives `hidden_state` and
/// Alice reports `outcome` on every one of `n_settings` settings.
LhsModel deterministic_lhs_model(const BlochVector& hidden_state, int outcome, int n_settings);

/// Draws a random ensemble: size uniform in 1..8, Dirichlet-uniform weights,
/// hidden states uniform in the Bloch ball, and per-setting response triples
/// Dirichlet-uniform over the 2-simplex (so strategic "0" reporting is
/// covered).
LhsModel random_lhs_model(int n_settings, std::mt19937_64& rng);

} // namespace qsteer
