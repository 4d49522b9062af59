// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#pragma once

#include <cstddef>

#include "beamloss/array_model.hpp"
#include "beamloss/impairment_model.hpp"

namespace beamloss {

// A power ratio in [0, 1] carried in both linear and decibel form.
// db = 10*log10(linear); a ratio of exactly 0 maps to -infinity.
struct LossValue {
    double linear;
    double db;

    // Validates the ratio; forgives floating-point overshoot above 1 by at
    // most 1e-9 (clamped to 1), throws beyond that or for negative input.
    static LossValue from_linear(double linear);
};

// Unnormalized sinc: sin(x)/x with sinc(0) = 1. Below |x| = 1e-4 the Taylor
// form 1 - x^2/6 + x^4/120 is used to avoid 0/0 noise.
double sinc(double x) noexcept;

// |<response, steering>| = (1/sqrt(N)) |sum_i rho_i exp(j 2*pi (eps_i cos(theta) - phi_i))|.
// The conjugation places the response on the left, so the impairment-free
// value is exactly +sqrt(N). Range [0, sqrt(N)]. Throws on length mismatch
// or empty input.
double correlation_magnitude(const PerturbedResponse& response, const SteeringVector& steering);

// Realized-to-nominal SNR ratio for one impairment draw:
//   correlation_magnitude^2 / N.
LossValue per_realization_snr_loss(const PerturbedResponse& response,
                                   const SteeringVector& steering);

// SNR of the unimpaired beamformer: N * beta^2 / sigma^2. The library works
// with beta = sigma = 1 throughout; this helper exists for absolute numbers.
// Throws for n = 0 or sigma2 <= 0.
double nominal_snr(std::size_t n, double beta, double sigma2);

// Worst-case SNR loss over the impairment box (even array sizes):
//   (1 - delta_g)^2 * cos^2(2*pi*(delta_p*cos(theta) + alpha_g)).
// Independent of the array size.
LossValue worst_case_snr_loss(const ImpairmentBounds& b, const DirectionOfDeparture& dod);

// Average SNR loss over impairments drawn uniformly from the box:
//   (3 - 3*dg + dg^2)/(3N)
//   + (N-1)(4 - 4*dg + dg^2)/(4N) * sinc^2(2*pi*dp*cos(theta)) * sinc^2(2*pi*ag).
// The first term is E{rho^2}/N, the second carries E{rho}^2 and the
// characteristic functions of the uniform phase and displacement errors.
LossValue average_snr_loss(const ImpairmentBounds& b, const DirectionOfDeparture& dod,
                           std::size_t n);

}  // namespace beamloss
