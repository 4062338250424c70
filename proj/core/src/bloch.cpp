#include "qsteer/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsteer {

BlochVector BlochVector::unit(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n < kUnitTol) {
        throw std::invalid_argument("BlochVector::unit: cannot normalize a zero vector");
    }
    return {x / n, y / n, z / n};
}

double BlochVector::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

BlochVector BlochVector::cross(const BlochVector& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
}

double TwoQubitState::max_singular_value() const {
    return correlation.jacobiSvd().singularValues().maxCoeff();
}

bool TwoQubitState::has_valid_correlation() const {
    const auto sv = correlation.jacobiSvd().singularValues();
    return sv.minCoeff() >= 0.0 && sv.maxCoeff() <= 1.0 + kUnitTol;
}

TwoQubitState werner_state(double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("werner_state: visibility must lie in [0, 1]");
    }
    TwoQubitState state;
    state.correlation = -visibility * Eigen::Matrix3d::Identity();
    return state;
}

BlochVector steered_bloch(const TwoQubitState& state, const BlochVector& alice_dir, int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw std::invalid_argument("steered_bloch: outcome must be +1 or -1");
    }
    if (std::abs(alice_dir.norm() - 1.0) > kUnitTol) {
        throw std::invalid_argument("steered_bloch: alice_dir must be a unit vector");
    }
    const double denom = 1.0 + outcome * state.a_local.dot(alice_dir);
    if (denom <= 0.0) {
        throw std::domain_error("steered_bloch: degenerate conditioning, Alice outcome has zero probability");
    }
    const Eigen::Vector3d steered =
        (state.b_local.to_eigen() + outcome * state.correlation.transpose() * alice_dir.to_eigen()) / denom;
    return BlochVector::from_eigen(steered);
}

double max_pairwise_overlap(const std::vector<BlochVector>& directions) {
    if (directions.size() < 2) {
        throw std::invalid_argument("max_pairwise_overlap: need at least two directions");
    }
    for (const auto& d : directions) {
        if (std::abs(d.norm() - 1.0) > kUnitTol) {
            throw std::invalid_argument("max_pairwise_overlap: directions must be unit vectors");
        }
    }
    double overlap = 0.0;
    for (std::size_t i = 0; i + 1 < directions.size(); ++i) {
        for (std::size_t j = i + 1; j < directions.size(); ++j) {
            overlap = std::max(overlap, std::abs(directions[i].dot(directions[j])));
        }
    }
    return std::min(overlap, 1.0);
}

MeasurementSet MeasurementSet::make(std::vector<BlochVector> directions) {
    if (directions.size() < 2 || directions.size() > 3) {
        throw std::invalid_argument("MeasurementSet: need 2 or 3 directions");
    }
    for (auto& d : directions) {
        d = BlochVector::unit(d.x, d.y, d.z);
    }
    MeasurementSet set;
    set.epsilon = max_pairwise_overlap(directions);
    set.directions = std::move(directions);
    return set;
}

MeasurementSet make_mub_triad() {
    return MeasurementSet::make({kXAxis, kYAxis, kZAxis});
}

} // namespace qsteer
