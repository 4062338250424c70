#include "qsteer/lhs_model.hpp"

#include <cmath>
#include <stdexcept>

namespace qsteer {

namespace {

constexpr double kSumTol = 1e-12;

void check_probability_triple(const std::array<double, 3>& p) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) {
            throw std::invalid_argument("LhsModel: response probabilities must be nonnegative");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > kSumTol) {
        throw std::invalid_argument("LhsModel: each response triple must sum to 1");
    }
}

} // namespace

LhsModel LhsModel::make(std::vector<LhsComponent> ensemble) {
    if (ensemble.empty()) {
        throw std::invalid_argument("LhsModel: ensemble must be nonempty");
    }
    const std::size_t n_settings = ensemble.front().response.size();
    if (n_settings == 0) {
        throw std::invalid_argument("LhsModel: components need at least one setting response");
    }
    double weight_sum = 0.0;
    for (const auto& c : ensemble) {
        if (c.weight < 0.0) {
            throw std::invalid_argument("LhsModel: weights must be nonnegative");
        }
        if (c.hidden_state.norm() > 1.0 + kUnitTol) {
            throw std::invalid_argument("LhsModel: hidden states must lie in the Bloch ball");
        }
        if (c.response.size() != n_settings) {
            throw std::invalid_argument("LhsModel: all components must cover the same settings");
        }
        for (const auto& triple : c.response) {
            check_probability_triple(triple);
        }
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > kSumTol) {
        throw std::invalid_argument("LhsModel: ensemble weights must sum to 1");
    }
    LhsModel model;
    model.ensemble = std::move(ensemble);
    return model;
}

int LhsModel::num_settings() const {
    return ensemble.empty() ? 0 : static_cast<int>(ensemble.front().response.size());
}

LhsModel deterministic_lhs_model(const BlochVector& hidden_state, int outcome, int n_settings) {
    if (outcome != 1 && outcome != -1 && outcome != 0) {
        throw std::invalid_argument("deterministic_lhs_model: outcome must be +1, -1 or 0");
    }
    std::array<double, 3> triple{0.0, 0.0, 0.0};
    triple[outcome == 1 ? 0 : outcome == -1 ? 1 : 2] = 1.0;
    LhsComponent c;
    c.weight = 1.0;
    c.hidden_state = hidden_state;
    c.response.assign(static_cast<std::size_t>(n_settings), triple);
    return LhsModel::make({std::move(c)});
}

LhsModel random_lhs_model(int n_settings, std::mt19937_64& rng) {
    if (n_settings < 1) {
        throw std::invalid_argument("random_lhs_model: need at least one setting");
    }
    std::uniform_int_distribution<int> size_dist(1, 8);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);

    const int n_components = size_dist(rng);
    std::vector<LhsComponent> ensemble(static_cast<std::size_t>(n_components));

    // Dirichlet(1,...,1) via normalized exponentials.
    double weight_sum = 0.0;
    for (auto& c : ensemble) {
        c.weight = expo(rng);
        weight_sum += c.weight;
    }
    for (auto& c : ensemble) {
        c.weight /= weight_sum;

        // Uniform in the ball: isotropic direction, radius ~ cbrt(U).
        const BlochVector dir = BlochVector::unit(gauss(rng), gauss(rng), gauss(rng));
        c.hidden_state = std::cbrt(uni(rng)) * dir;

        c.response.resize(static_cast<std::size_t>(n_settings));
        for (auto& triple : c.response) {
            double s = 0.0;
            for (double& p : triple) {
                p = expo(rng);
                s += p;
            }
            for (double& p : triple) {
                p /= s;
            }
        }
    }
    return LhsModel::make(std::move(ensemble));
}

} // namespace qsteer
