#include "qsteer/rng.hpp"

namespace qsteer {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t lane, std::uint64_t index) {
    std::uint64_t s = mix(master);
    s = mix(s ^ mix(lane));
    s = mix(s ^ mix(index));
    return s;
}

std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t lane, std::uint64_t index) {
    return std::mt19937_64(derive_seed(master, lane, index));
}

} // namespace qsteer
