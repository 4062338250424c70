#pragma once

#include <cstdint>
#include <random>

namespace qsteer {

/// Derives an independent stream seed from a master seed and a (lane, index)
/// key via splitmix64 mixing, so settings, batches and bootstrap replicates
/// can be sampled concurrently with reproducible, order-independent results.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t lane, std::uint64_t index = 0);

/// Engine seeded from a derived stream seed.
std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t lane, std::uint64_t index = 0);

/// Stream lanes used by the library; keeps distinct subsystems off each
/// other's substreams even for equal indices.
namespace rng_lane {
inline constexpr std::uint64_t setting = 1;
inline constexpr std::uint64_t bootstrap = 2;
inline constexpr std::uint64_t sweep = 3;
} // namespace rng_lane

} // namespace qsteer
