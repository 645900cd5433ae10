#pragma once

#include <cstdint>

namespace nevlab {

/// SplitMix64 stream seeded per path from (seed, path index), so paths
/// are reproducible independently of worker count or execution order.
class PathRng {
public:
    PathRng(uint64_t seed, uint64_t path_index)
        : state_(mix(seed ^ (0x9E3779B97F4A7C15ULL * (path_index + 1)))) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Standard normal pair via Box-Muller (deterministic draw count).
    void next_gaussian_pair(double& g1, double& g2);

private:
    uint64_t state_;

    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

} // namespace nevlab
