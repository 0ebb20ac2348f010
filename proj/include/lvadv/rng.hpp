#pragma once

#include <cstdint>
#include <random>

namespace lvadv {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Child generator for (seed, stream). Counter-derived so trial i sees the
/// same stream regardless of how many draws earlier trials made.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
    std::uint64_t a = splitmix64(s), b = splitmix64(s), c = splitmix64(s), d = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

/// Uniform draw from [0, n) by rejection; portable across standard libraries,
/// unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
    const std::uint64_t zone = (UINT64_MAX / n) * n;
    for (;;) {
        std::uint64_t r = g();
        if (r < zone) return r % n;
    }
}

} // namespace lvadv
