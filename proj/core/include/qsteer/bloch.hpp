#pragma once

#include <Eigen/Dense>

#include <vector>

namespace qsteer {

/// Tolerance for unit-norm and normalization checks throughout the library.
inline constexpr double kUnitTol = 1e-12;

/// A point in or on the Bloch ball. Used both for (sub)normalized qubit
/// states (|v| <= 1) and for measurement directions (|v| = 1).
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    /// Builds a unit vector by renormalizing (x, y, z). Throws
    /// std::invalid_argument on a (near-)zero input.
    static BlochVector unit(double x, double y, double z);

    double dot(const BlochVector& other) const { return x * other.x + y * other.y + z * other.z; }
    double norm() const;
    BlochVector cross(const BlochVector& other) const;

    Eigen::Vector3d to_eigen() const { return {x, y, z}; }
    static BlochVector from_eigen(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

    friend BlochVector operator+(const BlochVector& a, const BlochVector& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend BlochVector operator-(const BlochVector& a, const BlochVector& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend BlochVector operator*(double s, const BlochVector& v) { return {s * v.x, s * v.y, s * v.z}; }
    friend BlochVector operator-(const BlochVector& v) { return {-v.x, -v.y, -v.z}; }
    friend bool operator==(const BlochVector& a, const BlochVector& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

inline constexpr BlochVector kXAxis{1.0, 0.0, 0.0};
inline constexpr BlochVector kYAxis{0.0, 1.0, 0.0};
inline constexpr BlochVector kZAxis{0.0, 0.0, 1.0};

/// Two-qubit state in Bloch form: local Bloch vectors for each side plus the
/// 3x3 correlation matrix T_ij = <sigma_i (x) sigma_j>.
struct TwoQubitState {
    BlochVector a_local;
    BlochVector b_local;
    Eigen::Matrix3d correlation = Eigen::Matrix3d::Zero();

    /// Largest singular value of the correlation matrix.
    double max_singular_value() const;

    /// True when every singular value of T lies in [0, 1 + kUnitTol].
    bool has_valid_correlation() const;
};

/// Werner state of visibility V: V |psi-><psi-| + (1-V) I/4, i.e. vanishing
/// marginals and T = -V Identity. Throws for V outside [0, 1].
TwoQubitState werner_state(double visibility);

/// Bob's conditional Bloch vector given that Alice measured `alice_dir` and
/// obtained `outcome` (+1 or -1):
///
///   v = (b_local + outcome * T^t alice_dir) / (1 + outcome * a_local . alice_dir)
///
/// Throws std::domain_error when the conditioning probability is <= 0.
BlochVector steered_bloch(const TwoQubitState& state, const BlochVector& alice_dir, int outcome);

/// Maximum |b_i . b_j| over distinct pairs, clamped to [0, 1]. Inputs must be
/// at least two unit vectors.
double max_pairwise_overlap(const std::vector<BlochVector>& directions);

/// An ordered set of N in {2, 3} measurement directions together with its
/// nonorthogonality epsilon = max_{i != j} |b_i . b_j|.
struct MeasurementSet {
    std::vector<BlochVector> directions;
    double epsilon = 0.0;

    /// Renormalizes each direction and computes epsilon.
    static MeasurementSet make(std::vector<BlochVector> directions);

    int size() const { return static_cast<int>(directions.size()); }
};

/// The canonical mutually unbiased triad X, Y, Z (epsilon = 0).
MeasurementSet make_mub_triad();

} // namespace qsteer
