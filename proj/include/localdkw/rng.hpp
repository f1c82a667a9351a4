#pragma once

#include <cstdint>

namespace localdkw {

// SplitMix64 (Steele, Lea, Vigna 2014; public reference outputs available).
// Cheap to split: a substream is derived from (seed, stream index) by mixing,
// so parallel replications are reproducible across platforms and schedules.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 bits of mantissa.
    double next_uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Deterministic substream for a given (seed, index) pair.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 mixer(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
        return SplitMix64(mixer.next_u64());
    }

private:
    std::uint64_t state_;
};

}  // namespace localdkw
