#pragma once

// Counter-based deterministic randomness: every variate is a pure function
// of (seed, counter), so parallel and serial runs agree bit-for-bit and
// results do not depend on the standard library's distribution internals.

#include <cmath>
#include <cstdint>
#include <utility>

namespace gkp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Keyed stream value: mixes (seed, counter) into one 64-bit word.
inline std::uint64_t keyed_random(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ splitmix64(counter * 0xd1342543de82ef95ULL + 1));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
    return static_cast<double>(keyed_random(seed, counter) >> 11) * 0x1.0p-53;
}

// Pair of independent standard normals (Box–Muller) from one counter.
inline std::pair<double, double> normal_pair(std::uint64_t seed,
                                             std::uint64_t counter) {
    // Two sub-draws derived from the same counter keep the mapping
    // sample-index → variates stable regardless of batching.
    double u1 = uniform01(seed, 2 * counter);
    double u2 = uniform01(seed, 2 * counter + 1);
    double r = std::sqrt(-2.0 * std::log(1.0 - u1)); // 1−u1 ∈ (0,1]
    double a = 2.0 * 3.14159265358979323846 * u2;
    return {r * std::cos(a), r * std::sin(a)};
}

} // namespace gkp
