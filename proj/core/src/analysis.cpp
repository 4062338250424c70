#include "qsteer/analysis.hpp"

#include "qsteer/rng.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace qsteer {

namespace {

using WeightTable = std::array<std::array<double, 2>, 3>;

double weight_conditional_expectation(const std::array<double, 2>& row) {
    return (row[0] - row[1]) / (row[0] + row[1]);
}

// Alice-averaged square: zero-support conditionals enter with weight
// P(A=a) = 0, exactly when they are undefined.
double weight_setting_term(const WeightTable& w) {
    double total = 0.0;
    for (const auto& row : w) {
        total += row[0] + row[1];
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("setting_term: table has no events");
    }
    double term = 0.0;
    for (const auto& row : w) {
        const double support = row[0] + row[1];
        if (support > 0.0) {
            const double ce = weight_conditional_expectation(row);
            term += (support / total) * ce * ce;
        }
    }
    return term;
}

WeightTable to_weights(const CountTable& counts) {
    WeightTable w;
    for (std::size_t row = 0; row < 3; ++row) {
        for (std::size_t col = 0; col < 2; ++col) {
            w[row][col] = static_cast<double>(counts.n[row][col]);
        }
    }
    return w;
}

template <typename Table>
double steering_parameter_impl(const std::vector<Table>& tables) {
    const auto n = tables.size();
    if (n < 2 || n > 3) {
        throw std::invalid_argument("steering_parameter: need 2 or 3 setting tables");
    }
    double s = 0.0;
    for (const auto& table : tables) {
        s += setting_term(table);
    }
    return s;
}

template <typename Table>
EfficiencyEstimate heralding_and_visibility_impl(const std::vector<Table>& tables) {
    if (tables.empty()) {
        throw std::invalid_argument("heralding_and_visibility: need at least one table");
    }
    EfficiencyEstimate est;
    for (const auto& table : tables) {
        double conclusive = 0.0;
        double correlation = 0.0;
        double total = 0.0;
        for (int a : kAliceOutcomes) {
            for (int b : kBobOutcomes) {
                const double n = static_cast<double>(table.at(a, b));
                total += n;
                if (a != 0) {
                    conclusive += n;
                    correlation += a * b * n;
                }
            }
        }
        if (!(total > 0.0)) {
            throw std::invalid_argument("heralding_and_visibility: table has no events");
        }
        if (!(conclusive > 0.0)) {
            throw std::domain_error("heralding_and_visibility: no conclusive Alice events");
        }
        est.eta_hat += conclusive / total;
        est.visibility_hat += std::abs(correlation) / conclusive;
    }
    est.eta_hat /= static_cast<double>(tables.size());
    est.visibility_hat /= static_cast<double>(tables.size());
    return est;
}

double eval_estimator(const std::vector<CountTable>& tables, Estimator estimator) {
    switch (estimator) {
    case Estimator::steering:
        return steering_parameter(tables);
    case Estimator::heralding:
        return heralding_and_visibility(tables).eta_hat;
    case Estimator::visibility:
        return heralding_and_visibility(tables).visibility_hat;
    }
    throw std::invalid_argument("unknown estimator");
}

} // namespace

double conditional_expectation(const CountTable& counts, int a) {
    const double plus = static_cast<double>(counts.at(a, +1));
    const double minus = static_cast<double>(counts.at(a, -1));
    if (!(plus + minus > 0.0)) {
        throw std::domain_error("conditional_expectation: no events with this Alice outcome");
    }
    return (plus - minus) / (plus + minus);
}

double setting_term(const CountTable& counts) {
    return weight_setting_term(to_weights(counts));
}

double setting_term(const JointTable& probs) {
    return weight_setting_term(probs.p);
}

double steering_parameter(const std::vector<CountTable>& tables) {
    return steering_parameter_impl(tables);
}

double steering_parameter(const std::vector<JointTable>& tables) {
    return steering_parameter_impl(tables);
}

double corrected_bound(double w, double epsilon, int n_settings) {
    if (!(w >= 1.0)) {
        throw std::invalid_argument("corrected_bound: w must be >= 1");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("corrected_bound: epsilon must lie in [0, 1]");
    }
    if (n_settings != 2 && n_settings != 3) {
        throw std::invalid_argument("corrected_bound: N must be 2 or 3");
    }
    const double delta = (w - 1.0) / (2.0 * w);
    return w * w * (1.0 + (n_settings - 1) * (delta + epsilon - delta * epsilon));
}

double propagate_poisson_sigma(const std::vector<CountTable>& tables, Estimator estimator) {
    std::vector<CountTable> work = tables;
    const double center = eval_estimator(work, estimator);
    double variance = 0.0;
    for (auto& table : work) {
        for (auto& row : table.n) {
            for (auto& cell : row) {
                if (cell == 0) {
                    continue; // Poisson variance equals the count itself
                }
                const std::uint64_t original = cell;
                cell = original + 1;
                const double up = eval_estimator(work, estimator);
                double partial;
                try {
                    cell = original - 1;
                    const double down = eval_estimator(work, estimator);
                    partial = 0.5 * (up - down);
                } catch (const std::exception&) {
                    // Down-step left the estimator undefined; one-sided difference.
                    partial = up - center;
                }
                cell = original;
                variance += partial * partial * static_cast<double>(original);
            }
        }
    }
    return std::sqrt(variance);
}

double bootstrap_poisson_sigma(const std::vector<CountTable>& tables, Estimator estimator,
                               int replicates, std::uint64_t seed) {
    if (replicates < 2) {
        throw std::invalid_argument("bootstrap_poisson_sigma: need at least 2 replicates");
    }
    std::vector<double> values(static_cast<std::size_t>(replicates));
    std::vector<CountTable> resampled = tables;
    for (int r = 0; r < replicates; ++r) {
        auto rng = make_engine(seed, rng_lane::bootstrap, static_cast<std::uint64_t>(r));
        for (std::size_t t = 0; t < tables.size(); ++t) {
            for (std::size_t row = 0; row < 3; ++row) {
                for (std::size_t col = 0; col < 2; ++col) {
                    const std::uint64_t n = tables[t].n[row][col];
                    if (n == 0) {
                        resampled[t].n[row][col] = 0;
                    } else {
                        std::poisson_distribution<std::uint64_t> poisson(static_cast<double>(n));
                        resampled[t].n[row][col] = poisson(rng);
                    }
                }
            }
        }
        values[static_cast<std::size_t>(r)] = eval_estimator(resampled, estimator);
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= static_cast<double>(replicates);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(replicates - 1));
}

double bound_sigma(double w, double sigma_w, double epsilon, double sigma_epsilon, int n_settings) {
    if (sigma_w < 0.0 || sigma_epsilon < 0.0) {
        throw std::invalid_argument("bound_sigma: sigmas must be nonnegative");
    }
    corrected_bound(w, epsilon, n_settings); // validate central point
    const double hw = 1e-6 * std::max(1.0, std::abs(w));
    const double he = 1e-6 * std::max(1.0, std::abs(epsilon));
    // Central differences, one-sided at the domain edges.
    const auto b = [&](double wv, double ev) {
        return corrected_bound(std::max(wv, 1.0), std::min(std::max(ev, 0.0), 1.0), n_settings);
    };
    const double dw = (b(w + hw, epsilon) - b(w - hw, epsilon)) / (2.0 * hw);
    const double de = (b(w, epsilon + he) - b(w, epsilon - he)) / (2.0 * he);
    return std::hypot(dw * sigma_w, de * sigma_epsilon);
}

double violation_significance(double s_value, double s_sigma, double bound, double bound_sigma,
                              SignificanceMode mode) {
    if (s_sigma < 0.0 || bound_sigma < 0.0) {
        throw std::invalid_argument("violation_significance: sigmas must be nonnegative");
    }
    double sigma = 0.0;
    switch (mode) {
    case SignificanceMode::quadrature:
        sigma = std::hypot(s_sigma, bound_sigma);
        break;
    case SignificanceMode::s_only:
        sigma = s_sigma;
        break;
    case SignificanceMode::bound_only:
        sigma = bound_sigma;
        break;
    }
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("violation_significance: selected convention has zero uncertainty");
    }
    return (s_value - bound) / sigma;
}

EfficiencyEstimate heralding_and_visibility(const std::vector<CountTable>& tables) {
    return heralding_and_visibility_impl(tables);
}

EfficiencyEstimate heralding_and_visibility(const std::vector<JointTable>& tables) {
    return heralding_and_visibility_impl(tables);
}

std::optional<double> werner_threshold(int n_settings, double eta) {
    if (n_settings != 2 && n_settings != 3) {
        throw std::invalid_argument("werner_threshold: N must be 2 or 3");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("werner_threshold: eta must lie in (0, 1]");
    }
    const double v_min = std::sqrt(1.0 / (n_settings * eta));
    if (v_min > 1.0) {
        return std::nullopt;
    }
    return v_min;
}

SteeringReport make_report(const std::vector<CountTable>& tables, const ReportOptions& options) {
    SteeringReport report;
    report.n_settings = static_cast<int>(tables.size());
    report.mode = options.mode;
    report.s_value = steering_parameter(tables);
    report.s_sigma = options.bootstrap_replicates > 0
                         ? bootstrap_poisson_sigma(tables, Estimator::steering,
                                                   options.bootstrap_replicates, options.seed)
                         : propagate_poisson_sigma(tables, Estimator::steering);
    report.bound = corrected_bound(options.w, options.epsilon, report.n_settings);
    report.bound_sigma = bound_sigma(options.w, options.sigma_w, options.epsilon,
                                     options.sigma_epsilon, report.n_settings);
    const auto eff = heralding_and_visibility(tables);
    report.eta_hat = eff.eta_hat;
    report.visibility_hat = eff.visibility_hat;
    try {
        report.significance = violation_significance(report.s_value, report.s_sigma, report.bound,
                                                     report.bound_sigma, options.mode);
    } catch (const std::invalid_argument&) {
        // Noiseless data: no uncertainty to measure a violation against.
        report.significance = std::numeric_limits<double>::quiet_NaN();
    }
    return report;
}

} // namespace qsteer
