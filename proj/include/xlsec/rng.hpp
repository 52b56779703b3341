#pragma once

#include <cstdint>
#include <random>

namespace xlsec {

// splitmix64 step; used to derive independent sub-seeds from one user seed so
// every randomized component (channel, keygen, trials) gets its own stream.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t s = base + 0x632be59bd9b4e019ull * (stream + 1);
    return splitmix64(s);
}

// All randomness in the library comes from std::mt19937_64 consumed as raw
// 64-bit draws. Distribution adapters from <random> are implementation
// defined and would break cross-platform reproducibility.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection; bound must be nonzero.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = (~0ull / bound) * bound;
    for (;;) {
        std::uint64_t v = rng();
        if (v < limit) return v % bound;
    }
}

} // namespace xlsec
