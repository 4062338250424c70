#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsteer/apparatus.hpp"

#include <cmath>
#include <random>

using namespace qsteer;

namespace {

BlochVector random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    return BlochVector::unit(gauss(rng), gauss(rng), gauss(rng));
}

} // namespace

TEST_CASE("bob_click_probs on reference inputs") {
    SUBCASE("perfect aligned detection") {
        const auto p = bob_click_probs(BobApparatus::ideal(), kZAxis, kZAxis);
        CHECK(p.plus == 1.0);
        CHECK(p.minus == 0.0);
    }
    SUBCASE("unbiased input") {
        const auto p = bob_click_probs(BobApparatus::ideal(), kZAxis, kXAxis);
        CHECK(p.plus == 0.5);
        CHECK(p.minus == 0.5);
    }
    SUBCASE("asymmetric detectors, half projection") {
        const auto app = BobApparatus::make(1.0, 0.9, 0.8);
        const auto p = bob_click_probs(app, kZAxis, BlochVector{0.0, 0.0, 0.5});
        CHECK(p.plus == doctest::Approx(0.675).epsilon(1e-15));
        CHECK(p.minus == doctest::Approx(0.2).epsilon(1e-15));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(bob_click_probs(BobApparatus::ideal(), BlochVector{0.0, 0.0, 0.5}, kZAxis),
                        std::invalid_argument);
        CHECK_THROWS_AS(bob_click_probs(BobApparatus::ideal(), kZAxis, BlochVector{0.0, 0.0, 1.5}),
                        std::invalid_argument);
    }
}

TEST_CASE("click probabilities satisfy the conclusive-rate and bias bounds") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double t = 0.5 + 0.5 * uni(rng);
        const double eta_plus = 0.05 + 0.95 * uni(rng);
        const double eta_minus = 0.05 + 0.95 * uni(rng);
        const auto app = BobApparatus::make(t, eta_plus, eta_minus);
        const BlochVector b = random_unit(rng);
        const BlochVector u = std::cbrt(uni(rng)) * random_unit(rng);

        const auto p = bob_click_probs(app, b, u);
        CHECK(p.plus >= 0.0);
        CHECK(p.minus >= 0.0);
        CHECK(p.plus + p.minus <= 1.0 + 1e-12);
        CHECK(p.plus + p.minus >= std::min(eta_plus, eta_minus) - 1e-12);

        const auto asym = detector_asymmetry(eta_plus, eta_minus);
        const double bias = std::abs(p.plus - p.minus) / (p.plus + p.minus);
        const double limit = asym.w * (asym.delta + (1.0 - asym.delta) * std::abs(b.dot(u)));
        CHECK(bias <= limit + 1e-12);
    }
}

TEST_CASE("detector_asymmetry on reference inputs") {
    SUBCASE("equal efficiencies") {
        const auto a = detector_asymmetry(0.5, 0.5);
        CHECK(a.w == 1.0);
        CHECK(a.delta == 0.0);
    }
    SUBCASE("published ratio") {
        const auto a = DetectorAsymmetry::from_ratio(1.0115);
        CHECK(a.w == 1.0115);
        CHECK(a.delta == doctest::Approx(0.00568462679189326).epsilon(1e-12));
    }
    SUBCASE("direct substitution") {
        const auto a = detector_asymmetry(0.9, 0.8);
        CHECK(a.w == doctest::Approx(1.125).epsilon(1e-15));
        CHECK(a.delta == doctest::Approx(0.9 / 16.2).epsilon(1e-12)); // 0.1 / (2 * 0.9)
        CHECK(a.delta == doctest::Approx(0.0556).epsilon(1e-3));
    }
    SUBCASE("symmetry and delta identity") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> uni(0.05, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            const double ep = uni(rng);
            const double em = uni(rng);
            const auto a = detector_asymmetry(ep, em);
            const auto b = detector_asymmetry(em, ep);
            CHECK(a.w == b.w);
            CHECK(a.delta == b.delta);
            CHECK(a.delta == doctest::Approx((a.w - 1.0) / (2.0 * a.w)).epsilon(1e-12));
        }
    }
    SUBCASE("invalid efficiencies") {
        CHECK_THROWS_AS(detector_asymmetry(0.0, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(detector_asymmetry(0.5, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(DetectorAsymmetry::from_ratio(0.99), std::invalid_argument);
    }
}

TEST_CASE("dead_time_loss") {
    SUBCASE("published operating point") {
        const double loss = dead_time_loss(12000.0, 2e-6);
        CHECK(loss == doctest::Approx(0.023714290242090708).epsilon(1e-12));
        CHECK(loss > 0.023);
        CHECK(loss < 0.026);
    }
    SUBCASE("edge values") {
        CHECK(dead_time_loss(0.0, 123.0) == 0.0);
        CHECK(dead_time_loss(1e6, 2e-6) == doctest::Approx(0.8646647167633873).epsilon(1e-12));
    }
    SUBCASE("linear alternative") {
        CHECK(dead_time_loss(12000.0, 2e-6, DeadTimeModel::linear) == doctest::Approx(0.024));
        CHECK(dead_time_loss(1e9, 1.0, DeadTimeModel::linear) == 1.0);
    }
    SUBCASE("monotone in both arguments") {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> rate(0.0, 1e6);
        std::uniform_real_distribution<double> tau(0.0, 1e-4);
        for (int trial = 0; trial < 200; ++trial) {
            const double r1 = rate(rng), r2 = rate(rng);
            const double t1 = tau(rng), t2 = tau(rng);
            const double lo = dead_time_loss(std::min(r1, r2), std::min(t1, t2));
            const double hi = dead_time_loss(std::max(r1, r2), std::max(t1, t2));
            CHECK(lo <= hi);
        }
    }
    SUBCASE("negative arguments rejected") {
        CHECK_THROWS_AS(dead_time_loss(-1.0, 1e-6), std::invalid_argument);
        CHECK_THROWS_AS(dead_time_loss(1.0, -1e-6), std::invalid_argument);
    }
}

TEST_CASE("apparatus validation") {
    CHECK_THROWS_AS(BobApparatus::make(0.4, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BobApparatus::make(1.1, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BobApparatus::make(1.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(BobApparatus::make(1.0, 1.0, 1.2), std::invalid_argument);
    CHECK_THROWS_AS(BobApparatus::make(1.0, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_NOTHROW(BobApparatus::make(1.0, 1.0, 1.0, 1e-4));
}
