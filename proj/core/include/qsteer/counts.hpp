#pragma once

#include <array>
#include <cstdint>

namespace qsteer {

/// Outcome labels: Alice reports a in {+1, -1, 0} (0 = inconclusive), Bob
/// reports b in {+1, -1}. Tables are stored with Alice rows in the order
/// (+1, -1, 0) and Bob columns in the order (+1, -1).
inline constexpr std::array<int, 3> kAliceOutcomes{+1, -1, 0};
inline constexpr std::array<int, 2> kBobOutcomes{+1, -1};

int alice_row(int a);
int bob_col(int b);

/// Joint outcome distribution P(a, b) for one setting, conditioned on Bob
/// registering a conclusive event.
struct JointTable {
    std::array<std::array<double, 2>, 3> p{};

    double& at(int a, int b) { return p[static_cast<std::size_t>(alice_row(a))][static_cast<std::size_t>(bob_col(b))]; }
    double at(int a, int b) const { return p[static_cast<std::size_t>(alice_row(a))][static_cast<std::size_t>(bob_col(b))]; }

    double sum() const;
};

/// Per-setting joint counts n(a, b).
struct CountTable {
    int setting = 0;
    std::array<std::array<std::uint64_t, 2>, 3> n{};

    std::uint64_t& at(int a, int b) { return n[static_cast<std::size_t>(alice_row(a))][static_cast<std::size_t>(bob_col(b))]; }
    std::uint64_t at(int a, int b) const { return n[static_cast<std::size_t>(alice_row(a))][static_cast<std::size_t>(bob_col(b))]; }

    std::uint64_t total() const;

    friend bool operator==(const CountTable&, const CountTable&) = default;
};

} // namespace qsteer
