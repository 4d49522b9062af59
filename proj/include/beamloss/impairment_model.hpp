// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#pragma once

#include <cstddef>
#include <vector>

#include "beamloss/rng.hpp"

namespace beamloss {

// Per-antenna impairment box.
//
// Gain magnitudes lie in [1 - delta_g, 1], phase offsets in
// [-alpha_g, +alpha_g] (cycles, i.e. fractions of 2*pi), and x-axis
// displacement errors in [-delta_p, +delta_p] (wavelengths).
//
// The closed worst-case expression requires the total effective phase
// excursion to stay below a quarter cycle, hence the conservative feasibility
// condition alpha_g + delta_p < 1/4 (it bounds delta_p*cos(theta) + alpha_g
// for every direction at once).
struct ImpairmentBounds {
    double delta_g = 0.0;
    double alpha_g = 0.0;
    double delta_p = 0.0;
};

// Returns b unchanged if valid; otherwise throws std::invalid_argument with a
// distinct message for each violated condition:
//   delta_g in [0, 1], alpha_g >= 0, delta_p >= 0, alpha_g + delta_p < 1/4.
ImpairmentBounds validate_bounds(const ImpairmentBounds& b);

// One draw of the per-antenna impairments. Units match ImpairmentBounds:
// phi in cycles, eps_x in wavelengths.
struct ImpairmentRealization {
    std::vector<double> rho;
    std::vector<double> phi;
    std::vector<double> eps_x;

    std::size_t size() const noexcept { return rho.size(); }
};

// True when every component of r lies inside the box described by b,
// widened by tol on each side.
bool within_bounds(const ImpairmentRealization& r, const ImpairmentBounds& b,
                   double tol = 0.0) noexcept;

// Vector of per-antenna signs (+1 / -1) selecting which corner of the phase
// box each antenna sits on.
struct SignPattern {
    std::vector<int> signs;

    std::size_t size() const noexcept { return signs.size(); }
    bool is_balanced() const noexcept;  // equally many +1 and -1

    // First n/2 antennas +1, the rest -1. Requires n even and positive.
    static SignPattern canonical(std::size_t n);
};

// Draws rho_i ~ U(1-delta_g, 1), phi_i ~ U(-alpha_g, alpha_g),
// eps_i ~ U(-delta_p, delta_p), in that blocked order: all rho, then all phi,
// then all eps. Consumes exactly 3n draws, so the output is a pure function
// of the stream state.
ImpairmentRealization sample_realization(const ImpairmentBounds& b, std::size_t n,
                                         SubStream& stream);

// The loss-minimizing corner of the impairment box for an even-sized array:
// rho_i = 1 - delta_g, eps_i = p_i * delta_p, phi_i = -p_i * alpha_g, so that
// every effective phase eps_i*cos(theta) - phi_i = p_i*(delta_p*cos(theta) +
// alpha_g) with a balanced sign split. theta (radians, [0, pi/2]) is accepted
// for interface symmetry and range-checked; the corner itself is the same for
// every direction. Throws for odd n, zero n, or an unbalanced/mismatched
// pattern. The overload without a pattern uses SignPattern::canonical(n).
ImpairmentRealization worst_case_realization(const ImpairmentBounds& b, std::size_t n,
                                             double theta);
ImpairmentRealization worst_case_realization(const ImpairmentBounds& b, std::size_t n,
                                             double theta, const SignPattern& pattern);

// All C(n, n/2) balanced sign patterns in deterministic (ascending bit-mask)
// order. Requires n even, positive, and at most cap.
std::vector<SignPattern> balanced_patterns(std::size_t n, std::size_t cap = 16);

}  // namespace beamloss
