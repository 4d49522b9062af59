// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#pragma once

#include <cstdint>

namespace beamloss {

// Finalizer of the splitmix64 generator: bijective on 64-bit words, full avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives an independent seed from a base seed, a lane tag, and an index.
// Used to give Monte Carlo, swarm search, and each sweep row their own streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t lane,
                                    std::uint64_t index) noexcept {
    return mix64(mix64(base ^ 0xA5A5A5A5A5A5A5A5ULL * (lane + 1)) + mix64(index));
}

// Sequential splitmix64 stream. Cheap to construct; state is a single word.
class SubStream {
  public:
    explicit SubStream(std::uint64_t state) noexcept : state_(state) {}

    std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix_(state_);
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double next_unit() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi]; a degenerate interval returns lo exactly.
    // Always consumes exactly one 64-bit draw.
    double next_uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * next_unit();
    }

  private:
    static constexpr std::uint64_t mix_(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

// Counter-addressable random stream. substream(k) is a pure function of
// (seed, k): it does not depend on call order, previous draws, or thread
// count, so realization k can be regenerated from its index alone.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    SubStream substream(std::uint64_t index) const noexcept {
        return SubStream(mix64(seed_ + mix64(index)));
    }

  private:
    std::uint64_t seed_;
};

}  // namespace beamloss
