// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "beamloss/array_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace beamloss {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double half_pi = std::numbers::pi / 2.0;
}  // namespace

ArrayGeometry nominal_positions(std::size_t n, double spacing) {
    if (n == 0)
        throw std::invalid_argument("nominal_positions: antenna count must be at least 1");
    if (!(spacing > 0.0))
        throw std::invalid_argument("nominal_positions: element spacing must be positive");

    ArrayGeometry geom;
    geom.element_spacing = spacing;
    geom.positions.resize(n);
    const double mid = 0.5 * static_cast<double>(n + 1);
    for (std::size_t i = 1; i <= n; ++i)
        geom.positions[i - 1] = (static_cast<double>(i) - mid) * spacing;
    return geom;
}

DirectionOfDeparture::DirectionOfDeparture(double theta_rad) {
    if (!(theta_rad >= 0.0 && theta_rad <= half_pi)) {
        // Forgive representation noise just above pi/2 (e.g. degree conversion).
        if (theta_rad > half_pi && theta_rad <= half_pi * (1.0 + 1e-12)) {
            theta_rad = half_pi;
        } else {
            throw std::invalid_argument(
                "DirectionOfDeparture: theta must lie in [0, pi/2] radians");
        }
    }
    theta_ = theta_rad;
    cos_theta_ = (theta_rad == half_pi) ? 0.0 : std::cos(theta_rad);
}

DirectionOfDeparture DirectionOfDeparture::from_degrees(double theta_deg) {
    // Scaling by half_pi/90 maps 90 onto the representable pi/2 exactly.
    return DirectionOfDeparture((theta_deg / 90.0) * half_pi);
}

std::array<double, 3> DirectionOfDeparture::unit_vector() const noexcept {
    return {cos_theta_, std::sin(theta_), 0.0};
}

SteeringVector nominal_steering(const ArrayGeometry& geom, const DirectionOfDeparture& dod) {
    const std::size_t n = geom.size();
    if (n == 0) throw std::invalid_argument("nominal_steering: geometry is empty");

    SteeringVector w;
    w.entries.resize(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const double c = dod.cos_theta();
    for (std::size_t i = 0; i < n; ++i)
        w.entries[i] = std::polar(scale, -(two_pi * (geom.positions[i] * c)));
    return w;
}

PerturbedResponse perturbed_response(const ArrayGeometry& geom, const DirectionOfDeparture& dod,
                                     const ImpairmentRealization& realization) {
    const std::size_t n = geom.size();
    if (n == 0) throw std::invalid_argument("perturbed_response: geometry is empty");
    if (realization.rho.size() != n || realization.phi.size() != n ||
        realization.eps_x.size() != n)
        throw std::invalid_argument(
            "perturbed_response: realization length does not match geometry");

    PerturbedResponse e;
    e.entries.resize(n);
    const double c = dod.cos_theta();
    for (std::size_t i = 0; i < n; ++i) {
        const double angle =
            two_pi * (realization.phi[i] - (geom.positions[i] + realization.eps_x[i]) * c);
        e.entries[i] = std::polar(realization.rho[i], angle);
    }
    return e;
}

}  // namespace beamloss
