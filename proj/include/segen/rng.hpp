#pragma once

#include <cstdint>
#include <random>

namespace segen {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic independent sub-stream derived from a master seed and up to
// three stream coordinates (e.g. strategy, generation, model index).
inline Rng substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                     std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ splitmix64(a));
    s = splitmix64(s ^ splitmix64(b));
    s = splitmix64(s ^ splitmix64(c));
    return Rng(s);
}

}  // namespace segen
