#include "qsteer/apparatus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsteer {

BobApparatus BobApparatus::make(double transmission, double eta_plus, double eta_minus,
                                double double_click_prob) {
    if (!(transmission >= 0.5 && transmission <= 1.0)) {
        throw std::invalid_argument("BobApparatus: transmission must lie in [0.5, 1]");
    }
    if (!(eta_plus > 0.0 && eta_plus <= 1.0) || !(eta_minus > 0.0 && eta_minus <= 1.0)) {
        throw std::invalid_argument("BobApparatus: detector efficiencies must lie in (0, 1]");
    }
    if (!(double_click_prob >= 0.0 && double_click_prob < 1.0)) {
        throw std::invalid_argument("BobApparatus: double_click_prob must lie in [0, 1)");
    }
    return {transmission, eta_plus, eta_minus, double_click_prob};
}

ClickProbabilities bob_click_probs(const BobApparatus& app, const BlochVector& direction,
                                   const BlochVector& u) {
    if (std::abs(direction.norm() - 1.0) > kUnitTol) {
        throw std::invalid_argument("bob_click_probs: direction must be a unit vector");
    }
    if (u.norm() > 1.0 + kUnitTol) {
        throw std::invalid_argument("bob_click_probs: input state must lie in the Bloch ball");
    }
    const double projection = (2.0 * app.transmission - 1.0) * direction.dot(u);
    ClickProbabilities p;
    p.plus = std::max(0.0, 0.5 * app.eta_plus * (1.0 + projection));
    p.minus = std::max(0.0, 0.5 * app.eta_minus * (1.0 - projection));
    return p;
}

DetectorAsymmetry DetectorAsymmetry::from_ratio(double w) {
    if (!(w >= 1.0)) {
        throw std::invalid_argument("DetectorAsymmetry: ratio w must be >= 1");
    }
    return {w, (w - 1.0) / (2.0 * w)};
}

DetectorAsymmetry detector_asymmetry(double eta_plus, double eta_minus) {
    if (!(eta_plus > 0.0) || !(eta_minus > 0.0)) {
        throw std::invalid_argument("detector_asymmetry: efficiencies must be positive");
    }
    const double hi = std::max(eta_plus, eta_minus);
    const double lo = std::min(eta_plus, eta_minus);
    return {hi / lo, std::abs(eta_plus - eta_minus) / (2.0 * hi)};
}

double dead_time_loss(double singles_rate_hz, double dead_time_s, DeadTimeModel model) {
    if (singles_rate_hz < 0.0 || dead_time_s < 0.0) {
        throw std::invalid_argument("dead_time_loss: rate and dead time must be nonnegative");
    }
    const double exposure = singles_rate_hz * dead_time_s;
    switch (model) {
    case DeadTimeModel::exponential:
        return -std::expm1(-exposure);
    case DeadTimeModel::linear:
        return std::min(exposure, 1.0);
    }
    throw std::invalid_argument("dead_time_loss: unknown model");
}

} // namespace qsteer
