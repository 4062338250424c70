#pragma once

#include "qsteer/counts.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qsteer {

/// How the violation significance combines the two uncertainties. Quadrature
/// reproduces the published "48 standard deviations" for N = 2.
enum class SignificanceMode { quadrature, s_only, bound_only };

/// Estimators the Poisson uncertainty propagation can target.
enum class Estimator { steering, heralding, visibility };

/// <B>_{A=a} = (n(a,+1) - n(a,-1)) / (n(a,+1) + n(a,-1)). Throws
/// std::domain_error when the conditional has no support.
double conditional_expectation(const CountTable& counts, int a);

/// One term of the steering sum, Alice-averaged over a in {+1, -1, 0}:
/// sum_a P(A=a) <B>^2_{A=a}. Conditionals with zero support carry weight zero
/// and contribute nothing.
double setting_term(const CountTable& counts);
double setting_term(const JointTable& probs);

/// S_N: the sum of setting terms over all N in {2, 3} settings.
double steering_parameter(const std::vector<CountTable>& tables);
double steering_parameter(const std::vector<JointTable>& tables);

/// LHS bound corrected for detector asymmetry w and measurement
/// nonorthogonality epsilon:
///
///   S_N <= w^2 [1 + (N - 1)(delta + epsilon - delta epsilon)],
///   delta = (w - 1) / (2w).
double corrected_bound(double w, double epsilon, int n_settings);

/// Delta-method standard deviation sqrt(sum_cells (df/dn)^2 n) with partials
/// by central finite differences of one count. Cells with n = 0 contribute
/// zero variance.
double propagate_poisson_sigma(const std::vector<CountTable>& tables, Estimator estimator);

/// Parametric-bootstrap cross-check: resample every cell as Poisson(n),
/// recompute the estimator, and return the sample standard deviation over the
/// replicates. Deterministic for a fixed seed.
double bootstrap_poisson_sigma(const std::vector<CountTable>& tables, Estimator estimator,
                               int replicates, std::uint64_t seed);

/// First-order propagation of (sigma_w, sigma_epsilon) through
/// corrected_bound via central finite differences.
double bound_sigma(double w, double sigma_w, double epsilon, double sigma_epsilon, int n_settings);

/// (s_value - bound) / combined sigma. Negative when not violating. Throws
/// when the selected convention has zero uncertainty.
double violation_significance(double s_value, double s_sigma, double bound, double bound_sigma,
                              SignificanceMode mode = SignificanceMode::quadrature);

struct EfficiencyEstimate {
    double eta_hat = 0.0;
    double visibility_hat = 0.0;
};

/// Setting-averaged heralding efficiency (fraction of Alice-conclusive
/// events) and visibility |sum_{a != 0} a b n| / (conclusive total).
EfficiencyEstimate heralding_and_visibility(const std::vector<CountTable>& tables);
EfficiencyEstimate heralding_and_visibility(const std::vector<JointTable>& tables);

/// Minimal Werner visibility violating the N-setting inequality at heralding
/// eta, from eta V^2 > 1/N. Returns nullopt when even V = 1 cannot violate.
std::optional<double> werner_threshold(int n_settings, double eta);

/// Everything the analysis produces for one data set. `significance` is NaN
/// when both uncertainties vanish (perfect noiseless tables).
struct SteeringReport {
    int n_settings = 0;
    double s_value = 0.0;
    double s_sigma = 0.0;
    double bound = 0.0;
    double bound_sigma = 0.0;
    double significance = 0.0;
    double eta_hat = 0.0;
    double visibility_hat = 0.0;
    SignificanceMode mode = SignificanceMode::quadrature;
};

struct ReportOptions {
    double w = 1.0;
    double sigma_w = 0.0;
    double epsilon = 0.0;
    double sigma_epsilon = 0.0;
    SignificanceMode mode = SignificanceMode::quadrature;
    /// 0 = delta method; > 0 = parametric bootstrap with this many replicates.
    int bootstrap_replicates = 0;
    std::uint64_t seed = 0;
};

SteeringReport make_report(const std::vector<CountTable>& tables, const ReportOptions& options);

} // namespace qsteer
