// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "beamloss/array_model.hpp"
#include "beamloss/closed_form.hpp"
#include "beamloss/impairment_model.hpp"
#include "beamloss/rng.hpp"

using namespace beamloss;

namespace {

std::string thrown_message(const ImpairmentBounds& b) {
    try {
        validate_bounds(b);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("bounds validation accepts the box and rejects each violation") {
    CHECK_NOTHROW(validate_bounds({0.0, 0.0, 0.0}));
    CHECK_NOTHROW(validate_bounds({1.0, 0.0, 0.0}));
    CHECK_NOTHROW(validate_bounds({0.1, 0.1, 0.1}));
    CHECK_NOTHROW(validate_bounds({0.1, 0.12, 0.12}));

    CHECK_THROWS_AS(validate_bounds({-0.01, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_bounds({1.01, 0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_bounds({0.0, -0.01, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate_bounds({0.0, 0.0, -0.01}), std::invalid_argument);
    CHECK_THROWS_AS(validate_bounds({0.0, 0.13, 0.12}), std::invalid_argument);
    CHECK_THROWS_AS(validate_bounds({0.0, 0.25, 0.0}), std::invalid_argument);

    // Each violated condition names itself; callers surface these verbatim.
    CHECK(thrown_message({-1.0, 0.0, 0.0}) != thrown_message({0.0, -1.0, 0.0}));
    CHECK(thrown_message({0.0, -1.0, 0.0}) != thrown_message({0.0, 0.0, -1.0}));
    CHECK(thrown_message({0.0, 0.0, -1.0}) != thrown_message({0.0, 0.2, 0.2}));
}

TEST_CASE("sampled realizations stay in the box and have the right moments") {
    const ImpairmentBounds b{0.1, 0.05, 0.08};
    SubStream stream = RandomStream(31).substream(0);

    const std::size_t n = 16;
    const int draws = 6000;
    double rho_sum = 0.0, phi_sum = 0.0, eps_sum = 0.0;
    for (int k = 0; k < draws; ++k) {
        const ImpairmentRealization r = sample_realization(b, n, stream);
        REQUIRE(r.size() == n);
        REQUIRE(within_bounds(r, b));
        for (std::size_t i = 0; i < n; ++i) {
            rho_sum += r.rho[i];
            phi_sum += r.phi[i];
            eps_sum += r.eps_x[i];
        }
    }
    const double m = static_cast<double>(draws) * n;
    // U(0.9, 1) has mean 0.95, sd 0.1/sqrt(12); the symmetric ones center on 0.
    CHECK(std::abs(rho_sum / m - 0.95) < 4.0 * 0.1 / std::sqrt(12.0 * m));
    CHECK(std::abs(phi_sum / m) < 4.0 * 0.1 / std::sqrt(12.0 * m));
    CHECK(std::abs(eps_sum / m) < 4.0 * 0.16 / std::sqrt(12.0 * m));
}

TEST_CASE("sampling consumes exactly 3n draws in blocked order") {
    const ImpairmentBounds b{0.2, 0.03, 0.04};
    SubStream a = RandomStream(77).substream(4);
    SubStream mirror = RandomStream(77).substream(4);

    const ImpairmentRealization r = sample_realization(b, 3, a);
    // Reproduce by hand: all rho, then all phi, then all eps.
    for (int i = 0; i < 3; ++i)
        CHECK(r.rho[i] == mirror.next_uniform(1.0 - b.delta_g, 1.0));
    for (int i = 0; i < 3; ++i)
        CHECK(r.phi[i] == mirror.next_uniform(-b.alpha_g, b.alpha_g));
    for (int i = 0; i < 3; ++i)
        CHECK(r.eps_x[i] == mirror.next_uniform(-b.delta_p, b.delta_p));
    // Streams are in lockstep afterwards.
    CHECK(a.next_u64() == mirror.next_u64());
}

TEST_CASE("zero-width bounds sample exactly the nominal array") {
    SubStream stream = RandomStream(1).substream(0);
    const ImpairmentRealization r = sample_realization({0.0, 0.0, 0.0}, 8, stream);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(r.rho[i] == 1.0);
        CHECK(r.phi[i] == 0.0);
        CHECK(r.eps_x[i] == 0.0);
    }
}

TEST_CASE("within_bounds honors the tolerance argument") {
    const ImpairmentBounds b{0.1, 0.05, 0.05};
    ImpairmentRealization r;
    r.rho = {1.0 + 1e-10};
    r.phi = {0.0};
    r.eps_x = {0.0};
    CHECK_FALSE(within_bounds(r, b));
    CHECK(within_bounds(r, b, 1e-9));

    r.rho = {0.95};
    r.phi = {-0.05 - 1e-10};
    CHECK_FALSE(within_bounds(r, b));
    CHECK(within_bounds(r, b, 1e-9));
}

TEST_CASE("sign pattern balance and the canonical split") {
    SignPattern p = SignPattern::canonical(4);
    CHECK(p.signs == std::vector<int>{1, 1, -1, -1});
    CHECK(p.is_balanced());

    SignPattern q;
    q.signs = {1, 1, 1, -1};
    CHECK_FALSE(q.is_balanced());

    CHECK_THROWS_AS(SignPattern::canonical(3), std::invalid_argument);
    CHECK_THROWS_AS(SignPattern::canonical(0), std::invalid_argument);
}

TEST_CASE("worst-case corner pairs displacement against phase") {
    const ImpairmentBounds b{0.1, 0.05, 0.05};
    const ImpairmentRealization r = worst_case_realization(b, 2, 0.0);
    CHECK(r.rho == std::vector<double>{0.9, 0.9});
    CHECK(r.eps_x == std::vector<double>{0.05, -0.05});
    // Opposite sign from the displacement: the two effects add up in phase.
    CHECK(r.phi == std::vector<double>{-0.05, 0.05});

    const ImpairmentRealization r4 = worst_case_realization(b, 4, 0.3);
    CHECK(r4.eps_x == std::vector<double>{0.05, 0.05, -0.05, -0.05});
    CHECK(r4.phi == std::vector<double>{-0.05, -0.05, 0.05, 0.05});

    CHECK_THROWS_AS(worst_case_realization(b, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(worst_case_realization(b, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(worst_case_realization(b, 2, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(worst_case_realization(b, 2, 2.0), std::invalid_argument);

    SignPattern unbalanced;
    unbalanced.signs = {1, 1, 1, -1};
    CHECK_THROWS_AS(worst_case_realization(b, 4, 0.0, unbalanced), std::invalid_argument);
    SignPattern mismatched = SignPattern::canonical(2);
    CHECK_THROWS_AS(worst_case_realization(b, 4, 0.0, mismatched), std::invalid_argument);
}

TEST_CASE("balanced pattern enumeration counts binomial coefficients") {
    CHECK(balanced_patterns(2).size() == 2);
    CHECK(balanced_patterns(4).size() == 6);
    CHECK(balanced_patterns(8).size() == 70);
    for (const SignPattern& p : balanced_patterns(6)) {
        CHECK(p.size() == 6);
        CHECK(p.is_balanced());
    }
    CHECK_THROWS_AS(balanced_patterns(5), std::invalid_argument);
    CHECK_THROWS_AS(balanced_patterns(18, 16), std::invalid_argument);
}

TEST_CASE("every balanced corner attains the same correlation") {
    // The achieved correlation depends only on how many antennas take each
    // sign, not on which ones: all balanced corners are equally bad.
    const ImpairmentBounds b{0.1, 0.1, 0.1};
    const ArrayGeometry g = nominal_positions(6);
    const DirectionOfDeparture dod = DirectionOfDeparture::from_degrees(25.0);
    const SteeringVector v = nominal_steering(g, dod);

    double reference = -1.0;
    for (const SignPattern& p : balanced_patterns(6)) {
        const ImpairmentRealization r = worst_case_realization(b, 6, dod.theta(), p);
        const double mag = correlation_magnitude(perturbed_response(g, dod, r), v);
        if (reference < 0.0)
            reference = mag;
        else
            CHECK(mag == doctest::Approx(reference).epsilon(1e-12));
    }

    // An unbalanced corner is strictly less damaging.
    SignPattern lopsided;
    lopsided.signs = {1, 1, 1, 1, -1, -1};
    ImpairmentRealization r = worst_case_realization(b, 6, dod.theta(), SignPattern::canonical(6));
    for (std::size_t i = 0; i < 6; ++i) {
        const double s = static_cast<double>(lopsided.signs[i]);
        r.eps_x[i] = s * b.delta_p;
        r.phi[i] = -s * b.alpha_g;
    }
    const double worse = correlation_magnitude(perturbed_response(g, dod, r), v);
    CHECK(worse > reference + 1e-6);
}
