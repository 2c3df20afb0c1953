#pragma once

#include <cstdint>

namespace diffuni {

// SplitMix64. Chosen because it is tiny, portable, and completely described
// by the two constants below, so any run can be reproduced from (seed, index)
// alone regardless of platform or thread count.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        return mix(state);
    }
};

// Independent stream for one sample of a seeded experiment. Sample i draws
// from sample_stream(seed, i), so results do not depend on which worker
// thread processes which sample.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(SplitMix64::mix(seed + 0x9E3779B97F4A7C15ull * index));
}

} // namespace diffuni
