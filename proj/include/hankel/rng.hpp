#pragma once

#include <cstdint>

namespace hankel {

/// SplitMix64 generator. Used instead of std::mt19937 throughout so that
/// streams are reproducible bit-for-bit across platforms and standard
/// library implementations.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Derives an independent stream seed for (seed, stream_index) pairs,
    /// so parallel replicas get decorrelated sequences regardless of the
    /// order in which they are drawn.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 g(seed ^ (0xA0761D6478BD642FULL + stream * 0xE7037ED1A0B428DBULL));
        g.next_u64();
        return g.next_u64();
    }

private:
    std::uint64_t state_;
};

} // namespace hankel
