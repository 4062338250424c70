#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsteer/analysis.hpp"
#include "qsteer/montecarlo.hpp"

#include <cmath>
#include <random>

using namespace qsteer;

namespace {

// Closed-form Werner tables (exact probabilities) for N settings.
std::vector<JointTable> analytic_werner_tables(int n_settings, double eta, double visibility) {
    std::vector<JointTable> tables;
    for (int i = 0; i < n_settings; ++i) {
        JointTable p;
        for (int a : {+1, -1}) {
            for (int b : kBobOutcomes) {
                p.at(a, b) = eta * (1.0 - a * b * visibility) / 4.0;
            }
        }
        p.at(0, +1) = (1.0 - eta) / 2.0;
        p.at(0, -1) = (1.0 - eta) / 2.0;
        tables.push_back(p);
    }
    return tables;
}

CountTable perfect_singlet_table(std::uint64_t events_per_cell) {
    CountTable t;
    t.at(+1, -1) = events_per_cell;
    t.at(-1, +1) = events_per_cell;
    return t;
}

std::vector<CountTable> simulated_replica(std::uint64_t events, std::uint64_t seed) {
    HonestAlice alice;
    alice.heralding = 0.6175;
    const auto config = ExperimentConfig::make(werner_state(0.9678), make_mub_triad(), alice,
                                               BobApparatus::ideal(), events, seed);
    return simulate_experiment(config);
}

} // namespace

TEST_CASE("conditional_expectation") {
    CountTable t;
    t.at(+1, -1) = 100;
    CHECK(conditional_expectation(t, +1) == -1.0);

    t.at(+1, +1) = 100;
    CHECK(conditional_expectation(t, +1) == 0.0);

    CountTable u;
    u.at(+1, +1) = 10;
    u.at(+1, -1) = 612;
    CHECK(conditional_expectation(u, +1) == doctest::Approx(-0.9678456591639871).epsilon(1e-15));

    CHECK_THROWS_AS(conditional_expectation(u, -1), std::domain_error);
}

TEST_CASE("setting_term") {
    SUBCASE("analytic Werner term equals eta V^2") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double eta = uni(rng);
            const double v = uni(rng);
            const auto tables = analytic_werner_tables(1, eta, v);
            CHECK(setting_term(tables[0]) == doctest::Approx(eta * v * v).epsilon(1e-12));
        }
    }
    SUBCASE("inconclusive Alice with balanced Bob contributes nothing") {
        CountTable t;
        t.at(0, +1) = 500;
        t.at(0, -1) = 500;
        CHECK(setting_term(t) == 0.0);
    }
    SUBCASE("perfect correlations give 1") {
        CHECK(setting_term(perfect_singlet_table(1000)) == 1.0);
    }
    SUBCASE("empty table rejected") {
        CHECK_THROWS_AS(setting_term(CountTable{}), std::invalid_argument);
    }
    SUBCASE("zero-support conditionals carry weight zero") {
        CountTable t;
        t.at(+1, +1) = 30;
        t.at(+1, -1) = 10;
        t.at(0, +1) = 60;
        // a = -1 has no support; term = P(+1) ce(+1)^2 + P(0) ce(0)^2.
        const double ce_plus = 0.5;
        const double ce_zero = 1.0;
        const double expected = 0.4 * ce_plus * ce_plus + 0.6 * ce_zero * ce_zero;
        CHECK(setting_term(t) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("steering_parameter") {
    SUBCASE("three perfect singlet tables") {
        const std::vector<CountTable> tables(3, perfect_singlet_table(1000));
        CHECK(steering_parameter(tables) == 3.0);
    }
    SUBCASE("closed form N eta V^2 for the published parameters") {
        CHECK(steering_parameter(analytic_werner_tables(3, 0.6175, 0.9678)) ==
              doctest::Approx(1.7351197461).epsilon(1e-12));
        CHECK(steering_parameter(analytic_werner_tables(2, 0.6169, 0.9601)) ==
              doctest::Approx(1.137306981938).epsilon(1e-12));
    }
    SUBCASE("needs 2 or 3 tables") {
        CHECK_THROWS_AS(steering_parameter(std::vector<CountTable>(1, perfect_singlet_table(10))),
                        std::invalid_argument);
        CHECK_THROWS_AS(steering_parameter(std::vector<CountTable>(4, perfect_singlet_table(10))),
                        std::invalid_argument);
    }
}

TEST_CASE("corrected_bound") {
    SUBCASE("ideal apparatus") {
        CHECK(corrected_bound(1.0, 0.0, 3) == 1.0);
        CHECK(corrected_bound(1.0, 0.0, 2) == 1.0);
    }
    SUBCASE("published apparatus") {
        CHECK(corrected_bound(1.0115, 0.0134, 3) ==
              doctest::Approx(1.0620285721500002).epsilon(1e-12));
        CHECK(corrected_bound(1.0115, 1.3e-4, 2) ==
              doctest::Approx(1.0290806260962502).epsilon(1e-12));
        CHECK(std::abs(corrected_bound(1.0115, 0.0134, 3) - 1.062) < 5e-4);
        CHECK(std::abs(corrected_bound(1.0115, 1.3e-4, 2) - 1.0291) < 5e-4);
    }
    SUBCASE("monotone in every argument") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> wdist(1.0, 1.5);
        std::uniform_real_distribution<double> edist(0.0, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            const double w1 = wdist(rng), w2 = wdist(rng);
            const double e1 = edist(rng), e2 = edist(rng);
            const double lo = corrected_bound(std::min(w1, w2), std::min(e1, e2), 2);
            const double hi = corrected_bound(std::max(w1, w2), std::max(e1, e2), 2);
            CHECK(lo <= hi + 1e-15);
            CHECK(corrected_bound(w1, e1, 2) <= corrected_bound(w1, e1, 3) + 1e-15);
        }
    }
    SUBCASE("domain validation") {
        CHECK_THROWS_AS(corrected_bound(0.99, 0.0, 3), std::invalid_argument);
        CHECK_THROWS_AS(corrected_bound(1.0, -0.1, 3), std::invalid_argument);
        CHECK_THROWS_AS(corrected_bound(1.0, 1.1, 3), std::invalid_argument);
        CHECK_THROWS_AS(corrected_bound(1.0, 0.0, 4), std::invalid_argument);
    }
}

TEST_CASE("bound_sigma") {
    SUBCASE("published uncertainties") {
        const double s3 = bound_sigma(1.0115, 0.0007, 0.0134, 0.0007, 3);
        CHECK(s3 == doctest::Approx(0.0025877534692454276).epsilon(1e-6));
        CHECK(std::abs(s3 - 0.003) / 0.003 < 0.30);

        const double s2 = bound_sigma(1.0115, 0.0007, 1.3e-4, 1.5e-4, 2);
        CHECK(s2 == doctest::Approx(0.0017808375192910674).epsilon(1e-6));
        CHECK(std::abs(s2 - 0.0019) / 0.0019 < 0.30);
    }
    SUBCASE("zero input sigmas") {
        CHECK(bound_sigma(1.0115, 0.0, 0.0134, 0.0, 3) == 0.0);
    }
    SUBCASE("negative sigmas rejected") {
        CHECK_THROWS_AS(bound_sigma(1.0, -1e-3, 0.0, 0.0, 3), std::invalid_argument);
    }
}

TEST_CASE("violation_significance") {
    SUBCASE("published N=2 numbers give about 48 sigma") {
        const double s = violation_significance(1.1410, 0.0014, 1.0291, 0.0019);
        CHECK(s == doctest::Approx(47.413551684127356).epsilon(1e-12));
        CHECK(std::abs(s - 47.4) < 0.5);
    }
    SUBCASE("published N=3 numbers by convention") {
        CHECK(violation_significance(1.7408, 0.0017, 1.062, 0.003) ==
              doctest::Approx(196.85701991801264).epsilon(1e-12));
        CHECK(violation_significance(1.7408, 0.0017, 1.062, 0.003, SignificanceMode::bound_only) ==
              doctest::Approx(226.26666666666665).epsilon(1e-12));
        CHECK(violation_significance(1.7408, 0.0017, 1.062, 0.003, SignificanceMode::s_only) ==
              doctest::Approx(0.6788 / 0.0017).epsilon(1e-12));
    }
    SUBCASE("no violation is negative, equality is zero") {
        CHECK(violation_significance(1.0, 0.1, 1.0, 0.1) == 0.0);
        CHECK(violation_significance(0.9, 0.1, 1.0, 0.1) < 0.0);
    }
    SUBCASE("zero uncertainty rejected") {
        CHECK_THROWS_AS(violation_significance(1.0, 0.0, 1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(violation_significance(1.0, 0.0, 1.0, 0.1, SignificanceMode::s_only),
                        std::invalid_argument);
    }
}

TEST_CASE("heralding_and_visibility") {
    SUBCASE("perfect singlet tables") {
        const std::vector<CountTable> tables(3, perfect_singlet_table(1000));
        const auto est = heralding_and_visibility(tables);
        CHECK(est.eta_hat == 1.0);
        CHECK(est.visibility_hat == 1.0);
    }
    SUBCASE("exact on analytic Werner tables") {
        const auto est = heralding_and_visibility(analytic_werner_tables(3, 0.6175, 0.9678));
        CHECK(est.eta_hat == doctest::Approx(0.6175).epsilon(1e-12));
        CHECK(est.visibility_hat == doctest::Approx(0.9678).epsilon(1e-12));
    }
    SUBCASE("all-inconclusive tables error") {
        CountTable t;
        t.at(0, +1) = 10;
        t.at(0, -1) = 10;
        CHECK_THROWS_AS(heralding_and_visibility(std::vector<CountTable>{t}), std::domain_error);
    }
}

TEST_CASE("werner_threshold") {
    CHECK(werner_threshold(2, 1.0).value() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(werner_threshold(3, 1.0).value() == doctest::Approx(0.5773502691896257).epsilon(1e-10));
    CHECK(werner_threshold(2, 0.5).value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(!werner_threshold(2, 0.45).has_value());
    CHECK_THROWS_AS(werner_threshold(4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(werner_threshold(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(werner_threshold(2, 1.5), std::invalid_argument);
}

TEST_CASE("propagate_poisson_sigma") {
    SUBCASE("scales as 1/sqrt(k) under count scaling") {
        const auto base = simulated_replica(10000, 21);
        std::vector<CountTable> scaled = base;
        for (auto& table : scaled) {
            for (auto& row : table.n) {
                for (auto& cell : row) {
                    cell *= 100;
                }
            }
        }
        const double s_base = steering_parameter(base);
        const double s_scaled = steering_parameter(scaled);
        CHECK(s_base == doctest::Approx(s_scaled).epsilon(1e-12)); // S invariant

        const double sigma_base = propagate_poisson_sigma(base, Estimator::steering);
        const double sigma_scaled = propagate_poisson_sigma(scaled, Estimator::steering);
        CHECK(sigma_scaled == doctest::Approx(sigma_base / 10.0).epsilon(0.02));
    }
    SUBCASE("degenerate one-cell table has zero sigma") {
        CountTable t;
        t.at(+1, +1) = 1000;
        const std::vector<CountTable> tables(2, t);
        CHECK(propagate_poisson_sigma(tables, Estimator::steering) == 0.0);
    }
    SUBCASE("delta method agrees with the parametric bootstrap") {
        const auto tables = simulated_replica(1000000, 22);
        const double delta = propagate_poisson_sigma(tables, Estimator::steering);
        const double boot = bootstrap_poisson_sigma(tables, Estimator::steering, 1500, 23);
        CHECK(std::abs(delta - boot) / delta < 0.10);
    }
    SUBCASE("bootstrap is deterministic for a fixed seed") {
        const auto tables = simulated_replica(10000, 25);
        const double a = bootstrap_poisson_sigma(tables, Estimator::steering, 200, 9);
        const double b = bootstrap_poisson_sigma(tables, Estimator::steering, 200, 9);
        CHECK(a == b);
        CHECK_THROWS_AS(bootstrap_poisson_sigma(tables, Estimator::steering, 1, 9),
                        std::invalid_argument);
    }
    SUBCASE("heralding and visibility sigmas are finite and small") {
        const auto tables = simulated_replica(100000, 27);
        const double eta_sigma = propagate_poisson_sigma(tables, Estimator::heralding);
        const double vis_sigma = propagate_poisson_sigma(tables, Estimator::visibility);
        CHECK(eta_sigma > 0.0);
        CHECK(eta_sigma < 0.01);
        CHECK(vis_sigma > 0.0);
        CHECK(vis_sigma < 0.01);
    }
}

TEST_CASE("make_report recomputes its own significance") {
    const auto tables = simulated_replica(100000, 29);
    ReportOptions options;
    options.w = 1.0115;
    options.sigma_w = 0.0007;
    options.epsilon = 0.0134;
    options.sigma_epsilon = 0.0007;
    const SteeringReport report = make_report(tables, options);

    CHECK(report.n_settings == 3);
    CHECK(report.s_value >= 0.0);
    CHECK(report.s_value <= 3.0);
    CHECK(report.bound >= 1.0);
    CHECK(report.significance ==
          doctest::Approx(violation_significance(report.s_value, report.s_sigma, report.bound,
                                                 report.bound_sigma, report.mode))
              .epsilon(1e-12));

    // Perfect noiseless tables: significance is NaN (serialized as null).
    const std::vector<CountTable> perfect(3, perfect_singlet_table(1000));
    ReportOptions ideal;
    const SteeringReport noiseless = make_report(perfect, ideal);
    CHECK(noiseless.s_value == 3.0);
    CHECK(noiseless.bound == 1.0);
    CHECK(std::isnan(noiseless.significance));
}
