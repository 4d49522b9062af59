// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "beamloss/closed_form.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace beamloss {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace

LossValue LossValue::from_linear(double linear) {
    if (!(linear >= 0.0))
        throw std::invalid_argument("LossValue: power ratio must be nonnegative");
    if (linear > 1.0) {
        if (linear <= 1.0 + 1e-9)
            linear = 1.0;
        else
            throw std::invalid_argument("LossValue: power ratio exceeds 1");
    }
    LossValue v;
    v.linear = linear;
    v.db = linear > 0.0 ? 10.0 * std::log10(linear)
                        : -std::numeric_limits<double>::infinity();
    return v;
}

double sinc(double x) noexcept {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + (x2 * x2) / 120.0;
    }
    return std::sin(x) / x;
}

double correlation_magnitude(const PerturbedResponse& response, const SteeringVector& steering) {
    const std::size_t n = response.size();
    if (n == 0) throw std::invalid_argument("correlation_magnitude: empty vectors");
    if (steering.size() != n)
        throw std::invalid_argument("correlation_magnitude: vector length mismatch");

    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i)
        s += std::conj(response.entries[i]) * steering.entries[i];
    return std::abs(s);
}

LossValue per_realization_snr_loss(const PerturbedResponse& response,
                                   const SteeringVector& steering) {
    const double mag = correlation_magnitude(response, steering);
    return LossValue::from_linear(mag * mag / static_cast<double>(response.size()));
}

double nominal_snr(std::size_t n, double beta, double sigma2) {
    if (n == 0) throw std::invalid_argument("nominal_snr: antenna count must be at least 1");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("nominal_snr: noise power must be positive");
    return static_cast<double>(n) * beta * beta / sigma2;
}

LossValue worst_case_snr_loss(const ImpairmentBounds& b, const DirectionOfDeparture& dod) {
    validate_bounds(b);
    const double gain = 1.0 - b.delta_g;
    const double c = std::cos(two_pi * (b.delta_p * dod.cos_theta() + b.alpha_g));
    return LossValue::from_linear(gain * gain * c * c);
}

LossValue average_snr_loss(const ImpairmentBounds& b, const DirectionOfDeparture& dod,
                           std::size_t n) {
    validate_bounds(b);
    if (n == 0)
        throw std::invalid_argument("average_snr_loss: antenna count must be at least 1");

    const double nn = static_cast<double>(n);
    const double dg = b.delta_g;
    const double gain_power_mean = (3.0 - 3.0 * dg + dg * dg) / 3.0;  // E{rho^2}
    const double gain_mean_sq = (4.0 - 4.0 * dg + dg * dg) / 4.0;     // E{rho}^2
    const double s_pos = sinc(two_pi * b.delta_p * dod.cos_theta());
    const double s_phase = sinc(two_pi * b.alpha_g);
    const double linear = gain_power_mean / nn +
                          ((nn - 1.0) * gain_mean_sq / nn) * (s_pos * s_pos) * (s_phase * s_phase);
    return LossValue::from_linear(linear);
}

}  // namespace beamloss
