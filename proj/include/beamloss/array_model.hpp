// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "beamloss/impairment_model.hpp"

namespace beamloss {

// Antenna positions along the x axis in wavelength units, relative to the
// array center of mass. Aggregate on purpose: tests may build arbitrary
// position lists directly; nominal_positions() produces the centered
// uniform line used everywhere else.
struct ArrayGeometry {
    std::vector<double> positions;
    double element_spacing = 0.5;

    std::size_t size() const noexcept { return positions.size(); }
};

// Centered uniform linear array: p_i = (i - (n+1)/2) * spacing for i = 1..n,
// so the positions sum to zero. spacing in wavelengths (0.5 = half wave).
// Throws for n = 0 or spacing <= 0.
ArrayGeometry nominal_positions(std::size_t n, double spacing = 0.5);

// Departure direction measured from the array axis, theta in [0, pi/2].
// cos(theta) is snapped to exactly 0 at theta = pi/2 so broadside runs are
// exactly displacement-independent.
class DirectionOfDeparture {
  public:
    explicit DirectionOfDeparture(double theta_rad);
    static DirectionOfDeparture from_degrees(double theta_deg);

    double theta() const noexcept { return theta_; }
    double cos_theta() const noexcept { return cos_theta_; }
    std::array<double, 3> unit_vector() const noexcept;

  private:
    double theta_;
    double cos_theta_;
};

// Unit-norm precoder matched to the ideal array:
//   entry_i = exp(-j 2*pi p_i cos(theta)) / sqrt(N).
struct SteeringVector {
    std::vector<std::complex<double>> entries;

    std::size_t size() const noexcept { return entries.size(); }
};

// Array response with per-antenna impairments applied; deliberately a
// distinct type from SteeringVector because it is not 1/sqrt(N)-normalized:
//   entry_i = rho_i exp(j 2*pi phi_i) exp(-j 2*pi (p_i + eps_i) cos(theta)).
struct PerturbedResponse {
    std::vector<std::complex<double>> entries;

    std::size_t size() const noexcept { return entries.size(); }
};

SteeringVector nominal_steering(const ArrayGeometry& geom, const DirectionOfDeparture& dod);

// Throws when the realization length does not match the geometry.
PerturbedResponse perturbed_response(const ArrayGeometry& geom, const DirectionOfDeparture& dod,
                                     const ImpairmentRealization& realization);

}  // namespace beamloss
