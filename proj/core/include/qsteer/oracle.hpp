#pragma once

#include "qsteer/apparatus.hpp"
#include "qsteer/bloch.hpp"
#include "qsteer/lhs_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qsteer {

/// Exact steering parameter an LHS strategy produces against Bob's modeled
/// apparatus (detector ratio w, beam-displacer transmission t), composing the
/// click-probability model with the Alice-averaged steering sum.
double lhs_steering_parameter(const LhsModel& model, const MeasurementSet& bob_set,
                              const DetectorAsymmetry& asymmetry, double transmission = 1.0);

struct SphereSearchResult {
    double max_value = 0.0;
    BlochVector argmax;
};

/// Maximizes w^2 sum_i [delta + (1 - delta)(b_i . u)^2] over unit u by a
/// Fibonacci-lattice scan (>= `grid_nodes` nodes) followed by golden-section
/// refinement along tangent great circles. Deterministic.
SphereSearchResult lhs_max_over_sphere(const MeasurementSet& bob_set,
                                       const DetectorAsymmetry& asymmetry, int grid_nodes = 20000);

struct WorstCaseGeometry {
    std::vector<BlochVector> directions; // every pairwise dot exactly epsilon
    BlochVector u_star;                  // unit vector equidistant to all directions
    double achieved = 0.0;               // sum_i (b_i . u_star)^2 = 1 + (N - 1) epsilon
};

/// Constructs the extremal geometry of the nonorthogonality bound: N unit
/// vectors with every pairwise dot equal to epsilon and the equidistant unit
/// vector that attains sum_i (b_i . u)^2 = 1 + (N - 1) epsilon. Feasibility is
/// checked through the Gram-matrix eigenvalues.
WorstCaseGeometry worst_case_directions(int n_settings, double epsilon);

/// Largest steering parameter among the given LHS models.
double max_lhs_steering(std::span<const LhsModel> models, const MeasurementSet& bob_set,
                        const DetectorAsymmetry& asymmetry, double transmission = 1.0);

/// Evaluates `n_models` random LHS strategies (via random_lhs_model) against
/// the apparatus and returns the largest steering parameter observed. Stays
/// below corrected_bound(w, epsilon, N) for sound bounds; deterministic for a
/// fixed seed.
double random_lhs_sweep(const MeasurementSet& bob_set, const DetectorAsymmetry& asymmetry,
                        double transmission, int n_models, std::uint64_t seed);

} // namespace qsteer
