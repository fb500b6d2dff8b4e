#pragma once

#include <cstdint>

namespace pdd {

// SplitMix64 (Steele, Lea & Flood 2014). One 64-bit word of state, output
// sequence fully determined by the seed, identical on every platform. Used
// everywhere randomness is needed so fixtures can be reproduced bit-exactly
// from a seed in any language.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0,n).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(next_double() * static_cast<double>(n)) % n;
    }

private:
    std::uint64_t state_;
};

// Stream seed for substream `index` of a run seeded with `seed`. Records are
// generated from disjoint substreams so generation order (or a parallel
// partition over index ranges) cannot change the output.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return mixer.next();
}

}  // namespace pdd
