// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "beamloss/rng.hpp"

using namespace beamloss;

TEST_CASE("substreams are pure functions of seed and index") {
    RandomStream stream(12345);

    SubStream a = stream.substream(9);
    const std::uint64_t first = a.next_u64();
    a.next_u64();
    a.next_u64();

    // Draining other substreams, or the same one, must not shift index 9.
    stream.substream(3).next_u64();
    stream.substream(123456789).next_u64();
    SubStream b = stream.substream(9);
    CHECK(b.next_u64() == first);

    RandomStream same_seed(12345);
    SubStream c = same_seed.substream(9);
    CHECK(c.next_u64() == first);
}

TEST_CASE("frozen draws pin the stream layout") {
    // Reference values recorded from this implementation. They guard the
    // reproducibility contract: seeded outputs (CSV files, search results)
    // must not drift across refactors or platforms.
    RandomStream stream(42);
    SubStream a = stream.substream(0);
    CHECK(a.next_u64() == 0x26E85841B16F7A5AULL);
    CHECK(a.next_u64() == 0xE6558FA3E016FA7CULL);
    CHECK(stream.substream(7).next_u64() == 0xC2E3DFBB11ED9379ULL);
    CHECK(derive_seed(1, 0, 0) == 0xBCEBE8388C53A0ACULL);
    CHECK(stream.substream(0).next_unit() == doctest::Approx(0.15198279956660865).epsilon(1e-15));
}

TEST_CASE("different seeds, lanes, and indices give different streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t base : {0ULL, 1ULL, 42ULL})
        for (std::uint64_t lane : {0ULL, 1ULL, 7ULL})
            for (std::uint64_t index : {0ULL, 1ULL, 1000ULL})
                seen.insert(derive_seed(base, lane, index));
    CHECK(seen.size() == 27);

    RandomStream stream(7);
    CHECK(stream.substream(0).next_u64() != stream.substream(1).next_u64());
}

TEST_CASE("mix64 is injective on a sample") {
    std::set<std::uint64_t> out;
    for (std::uint64_t z = 0; z < 10000; ++z) out.insert(mix64(z));
    CHECK(out.size() == 10000);
}

TEST_CASE("unit draws stay inside [0, 1) and look uniform") {
    SubStream s = RandomStream(2024).substream(0);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = s.next_unit();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        sum_sq += u * u;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    // Uniform(0,1): mean 1/2 with sd 1/sqrt(12n), variance 1/12.
    CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("uniform range draws respect their bounds") {
    SubStream s = RandomStream(5).substream(1);
    for (int i = 0; i < 1000; ++i) {
        const double x = s.next_uniform(-0.25, 0.75);
        REQUIRE(x >= -0.25);
        REQUIRE(x <= 0.75);
    }

    SUBCASE("degenerate interval is exact and still consumes a draw") {
        SubStream a = RandomStream(9).substream(0);
        SubStream b = RandomStream(9).substream(0);
        CHECK(a.next_uniform(0.3, 0.3) == 0.3);
        b.next_u64();
        // Both streams advanced once; they must agree from here on.
        CHECK(a.next_u64() == b.next_u64());
    }
}
