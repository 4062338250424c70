#include "qsteer/oracle.hpp"

#include "qsteer/analysis.hpp"
#include "qsteer/montecarlo.hpp"
#include "qsteer/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace qsteer {

namespace {

// Only the efficiency ratio w matters for conclusive-conditioned statistics;
// the overall scale cancels in the conditioning.
BobApparatus apparatus_from_asymmetry(const DetectorAsymmetry& asymmetry, double transmission) {
    return BobApparatus::make(transmission, 1.0, 1.0 / asymmetry.w, 0.0);
}

double sphere_objective(const MeasurementSet& set, const DetectorAsymmetry& asym,
                        const BlochVector& u) {
    double sum = 0.0;
    for (const auto& b : set.directions) {
        const double proj = b.dot(u);
        sum += asym.delta + (1.0 - asym.delta) * proj * proj;
    }
    return asym.w * asym.w * sum;
}

// Golden-section maximization of f over [lo, hi].
template <typename F>
double golden_section_max(F&& f, double lo, double hi, int iterations) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

BlochVector rotate_towards(const BlochVector& u, const BlochVector& tangent, double angle) {
    return BlochVector::unit(u.x * std::cos(angle) + tangent.x * std::sin(angle),
                             u.y * std::cos(angle) + tangent.y * std::sin(angle),
                             u.z * std::cos(angle) + tangent.z * std::sin(angle));
}

BlochVector any_orthogonal(const BlochVector& u) {
    const BlochVector probe = std::abs(u.z) < 0.9 ? kZAxis : kXAxis;
    return BlochVector::unit(u.cross(probe).x, u.cross(probe).y, u.cross(probe).z);
}

} // namespace

double lhs_steering_parameter(const LhsModel& model, const MeasurementSet& bob_set,
                              const DetectorAsymmetry& asymmetry, double transmission) {
    if (model.num_settings() != bob_set.size()) {
        throw std::invalid_argument("lhs_steering_parameter: model must cover every Bob setting");
    }
    const BobApparatus app = apparatus_from_asymmetry(asymmetry, transmission);
    double s = 0.0;
    for (int setting = 0; setting < bob_set.size(); ++setting) {
        const JointTable joint = adversarial_joint_distribution(
            model, setting, bob_set.directions[static_cast<std::size_t>(setting)], app);
        s += setting_term(joint);
    }
    return s;
}

SphereSearchResult lhs_max_over_sphere(const MeasurementSet& bob_set,
                                       const DetectorAsymmetry& asymmetry, int grid_nodes) {
    if (grid_nodes < 2) {
        throw std::invalid_argument("lhs_max_over_sphere: need at least 2 grid nodes");
    }
    const auto f = [&](const BlochVector& u) { return sphere_objective(bob_set, asymmetry, u); };

    // Coarse scan over a Fibonacci lattice.
    constexpr double golden_angle = 2.39996322972865332; // pi (3 - sqrt 5)
    SphereSearchResult best;
    best.max_value = -1.0;
    for (int k = 0; k < grid_nodes; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / grid_nodes;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * k;
        const BlochVector u{r * std::cos(phi), r * std::sin(phi), z};
        const double value = f(u);
        if (value > best.max_value) {
            best.max_value = value;
            best.argmax = u;
        }
    }

    // Local refinement: golden-section line searches along the two tangent
    // great circles, with a shrinking trust region.
    constexpr double four_pi = 12.566370614359172;
    double step = 4.0 * std::sqrt(four_pi / grid_nodes); // a few lattice spacings
    BlochVector u = best.argmax;
    for (int pass = 0; pass < 48 && step > 1e-9; ++pass) {
        const BlochVector e1 = any_orthogonal(u);
        const BlochVector e2 = BlochVector::unit(u.cross(e1).x, u.cross(e1).y, u.cross(e1).z);
        for (const BlochVector& tangent : {e1, e2}) {
            const auto along = [&](double angle) { return f(rotate_towards(u, tangent, angle)); };
            const double angle = golden_section_max(along, -step, step, 40);
            u = rotate_towards(u, tangent, angle);
        }
        step *= 0.6;
    }
    const double refined = f(u);
    if (refined > best.max_value) {
        best.max_value = refined;
        best.argmax = u;
    }
    return best;
}

WorstCaseGeometry worst_case_directions(int n_settings, double epsilon) {
    if (n_settings != 2 && n_settings != 3) {
        throw std::invalid_argument("worst_case_directions: N must be 2 or 3");
    }
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("worst_case_directions: epsilon must lie in [0, 1)");
    }

    // Feasibility: the N x N Gram matrix (1 on the diagonal, epsilon off it)
    // must be positive semidefinite.
    Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(n_settings, n_settings, epsilon);
    gram.diagonal().setOnes();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen(gram);
    if (eigen.eigenvalues().minCoeff() < -1e-12) {
        throw std::invalid_argument("worst_case_directions: requested overlap is not realizable");
    }

    WorstCaseGeometry geometry;
    geometry.directions.push_back(kXAxis);
    geometry.directions.push_back({epsilon, std::sqrt(1.0 - epsilon * epsilon), 0.0});
    if (n_settings == 3) {
        // Third vector with both dots exactly epsilon; the z component closes
        // the unit norm.
        const double c = epsilon * std::sqrt((1.0 - epsilon) / (1.0 + epsilon));
        const double z2 = 1.0 - epsilon * epsilon - c * c;
        geometry.directions.push_back({epsilon, c, std::sqrt(std::max(0.0, z2))});
    }

    BlochVector sum{0.0, 0.0, 0.0};
    for (const auto& b : geometry.directions) {
        sum = sum + b;
    }
    geometry.u_star = BlochVector::unit(sum.x, sum.y, sum.z);
    for (const auto& b : geometry.directions) {
        const double proj = b.dot(geometry.u_star);
        geometry.achieved += proj * proj;
    }
    return geometry;
}

double max_lhs_steering(std::span<const LhsModel> models, const MeasurementSet& bob_set,
                        const DetectorAsymmetry& asymmetry, double transmission) {
    if (models.empty()) {
        throw std::invalid_argument("max_lhs_steering: need at least one model");
    }
    double best = -1.0;
    for (const auto& model : models) {
        best = std::max(best, lhs_steering_parameter(model, bob_set, asymmetry, transmission));
    }
    return best;
}

double random_lhs_sweep(const MeasurementSet& bob_set, const DetectorAsymmetry& asymmetry,
                        double transmission, int n_models, std::uint64_t seed) {
    if (n_models < 1) {
        throw std::invalid_argument("random_lhs_sweep: need at least one model");
    }
    double best = -1.0;
    for (int m = 0; m < n_models; ++m) {
        auto rng = make_engine(seed, rng_lane::sweep, static_cast<std::uint64_t>(m));
        const LhsModel model = random_lhs_model(bob_set.size(), rng);
        best = std::max(best, lhs_steering_parameter(model, bob_set, asymmetry, transmission));
    }
    return best;
}

} // namespace qsteer
