#pragma once

#include "qsteer/bloch.hpp"
#include "qsteer/lhs_model.hpp"

#include <variant>
#include <vector>

namespace qsteer {

/// Bob's trusted polarization analyzer: beam-displacer transmission t, the
/// two detector efficiencies, and the per-detection double-click probability.
struct BobApparatus {
    double transmission = 1.0;      // t in [0.5, 1]; lab-grade displacers reach 1 - t <= 1e-5
    double eta_plus = 1.0;          // +1 detector efficiency, (0, 1]
    double eta_minus = 1.0;         // -1 detector efficiency, (0, 1]
    double double_click_prob = 0.0; // per detected photon, [0, 1); typically ~1e-4

    static BobApparatus make(double transmission, double eta_plus, double eta_minus,
                             double double_click_prob = 0.0);
    static BobApparatus ideal() { return {}; }
};

struct ClickProbabilities {
    double plus = 0.0;
    double minus = 0.0;
};

/// Click probabilities for a photon in Bloch state u entering Bob's analyzer
/// set to direction b:
///
///   P(+-) = (eta_+- / 2) [1 +- (2t - 1) b . u]
///
/// Requires unit `direction` and |u| <= 1.
ClickProbabilities bob_click_probs(const BobApparatus& app, const BlochVector& direction,
                                   const BlochVector& u);

/// Detector-efficiency asymmetry: w = max(eta+, eta-) / min(eta+, eta-) and
/// delta = |eta+ - eta-| / (2 max(eta+, eta-)) = (w - 1) / (2w).
struct DetectorAsymmetry {
    double w = 1.0;
    double delta = 0.0;

    /// Builds the pair directly from the efficiency ratio w >= 1.
    static DetectorAsymmetry from_ratio(double w);
};

/// Symmetric in its arguments; efficiencies must be positive.
DetectorAsymmetry detector_asymmetry(double eta_plus, double eta_minus);

enum class DeadTimeModel {
    exponential, // 1 - exp(-rate * tau), exact for Poissonian arrivals
    linear       // rate * tau, clamped to 1; first-order approximation
};

/// Fraction of events lost to detector dead time at the given singles rate.
double dead_time_loss(double singles_rate_hz, double dead_time_s,
                      DeadTimeModel model = DeadTimeModel::exponential);

/// Alice measuring honestly along her own directions, reporting a conclusive
/// outcome with probability `heralding` whenever Bob gets one. An empty
/// direction list means "mirror Bob's settings" and is resolved when an
/// experiment configuration is assembled.
struct HonestAlice {
    double heralding = 1.0;
    std::vector<BlochVector> directions;
};

/// Alice's untrusted black box: either an honest lossy measurement or an
/// adversarial local-hidden-state strategy.
using AliceDevice = std::variant<HonestAlice, LhsModel>;

} // namespace qsteer
