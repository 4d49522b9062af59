// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "beamloss/array_model.hpp"
#include "beamloss/impairment_model.hpp"

namespace beamloss {

struct MonteCarloEstimate {
    double mean_linear;      // mean of per-realization linear losses
    double std_error;        // sample std (n-1 normalized) / sqrt(n_samples)
    std::size_t n_samples;
    std::uint64_t seed;
};

// Monte Carlo mean of per_realization_snr_loss over n_samples independent
// draws from the impairment box. Realization k is generated from
// substream(seed, k), and partial sums are accumulated in fixed 1024-sample
// blocks reduced in block order, so the result is bit-identical for any
// n_threads. Averaging happens in linear scale; convert to dB afterwards.
// Throws on invalid bounds, n_antennas = 0, or n_samples < 2.
MonteCarloEstimate estimate_average_loss(const ImpairmentBounds& b, std::size_t n_antennas,
                                         const DirectionOfDeparture& dod,
                                         std::size_t n_samples, std::uint64_t seed,
                                         unsigned n_threads = 1);

// One estimate per entry of sample_counts (strictly increasing, each >= 2).
// Entry j consumes its own disjoint substream range, placed consecutively,
// so a single-entry scan reproduces estimate_average_loss exactly.
std::vector<MonteCarloEstimate> convergence_scan(const ImpairmentBounds& b,
                                                 std::size_t n_antennas,
                                                 const DirectionOfDeparture& dod,
                                                 const std::vector<std::size_t>& sample_counts,
                                                 std::uint64_t seed, unsigned n_threads = 1);

}  // namespace beamloss
