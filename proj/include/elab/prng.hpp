#pragma once
// Seeded splitmix64 generator. This exact recurrence is part of the tool
// contract: identical seeds must reproduce identical experiment streams
// across builds, so we do not use std::mt19937 or other unspecified engines.

#include <cstdint>

namespace elab {

struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is < n/2^64, irrelevant for test sampling.
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    // Uniform in [lo, hi] (inclusive).
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<uint64_t>(hi - lo) + 1));
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }
};

}  // namespace elab
