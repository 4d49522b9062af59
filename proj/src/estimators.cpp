// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "beamloss/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "beamloss/closed_form.hpp"
#include "beamloss/parallel.hpp"
#include "beamloss/rng.hpp"

namespace beamloss {

namespace {

// Fixed accumulation block. Each block sums its realizations sequentially and
// the block partials are reduced in index order, so the totals never depend
// on how blocks are assigned to threads.
constexpr std::size_t kBlockSize = 1024;

struct BlockSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

MonteCarloEstimate estimate_range(const ImpairmentBounds& b, std::size_t n_antennas,
                                  const DirectionOfDeparture& dod, std::size_t n_samples,
                                  std::uint64_t seed, std::uint64_t first_index,
                                  unsigned n_threads) {
    validate_bounds(b);
    if (n_antennas == 0)
        throw std::invalid_argument("estimate_average_loss: antenna count must be at least 1");
    if (n_samples < 2)
        throw std::invalid_argument("estimate_average_loss: need at least 2 samples");

    const ArrayGeometry geom = nominal_positions(n_antennas, 0.5);
    const SteeringVector steering = nominal_steering(geom, dod);
    const RandomStream stream(seed);

    const std::size_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
    std::vector<BlockSums> blocks(n_blocks);
    detail::parallel_for(n_blocks, n_threads, [&](std::size_t bi) {
        const std::size_t k_begin = bi * kBlockSize;
        const std::size_t k_end = std::min(k_begin + kBlockSize, n_samples);
        BlockSums acc;
        for (std::size_t k = k_begin; k < k_end; ++k) {
            SubStream sub = stream.substream(first_index + k);
            const ImpairmentRealization r = sample_realization(b, n_antennas, sub);
            const PerturbedResponse resp = perturbed_response(geom, dod, r);
            const double loss = per_realization_snr_loss(resp, steering).linear;
            acc.sum += loss;
            acc.sum_sq += loss * loss;
        }
        blocks[bi] = acc;
    });

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const BlockSums& blk : blocks) {
        sum += blk.sum;
        sum_sq += blk.sum_sq;
    }

    const double m = static_cast<double>(n_samples);
    const double mean = sum / m;
    double var = (sum_sq - m * mean * mean) / (m - 1.0);
    if (var < 0.0) var = 0.0;  // rounding guard for degenerate data
    return MonteCarloEstimate{mean, std::sqrt(var / m), n_samples, seed};
}

}  // namespace

MonteCarloEstimate estimate_average_loss(const ImpairmentBounds& b, std::size_t n_antennas,
                                         const DirectionOfDeparture& dod,
                                         std::size_t n_samples, std::uint64_t seed,
                                         unsigned n_threads) {
    return estimate_range(b, n_antennas, dod, n_samples, seed, 0, n_threads);
}

std::vector<MonteCarloEstimate> convergence_scan(const ImpairmentBounds& b,
                                                 std::size_t n_antennas,
                                                 const DirectionOfDeparture& dod,
                                                 const std::vector<std::size_t>& sample_counts,
                                                 std::uint64_t seed, unsigned n_threads) {
    if (sample_counts.empty())
        throw std::invalid_argument("convergence_scan: sample count list is empty");
    for (std::size_t j = 0; j < sample_counts.size(); ++j) {
        if (sample_counts[j] < 2)
            throw std::invalid_argument("convergence_scan: sample counts must be at least 2");
        if (j > 0 && sample_counts[j] <= sample_counts[j - 1])
            throw std::invalid_argument("convergence_scan: sample counts must strictly increase");
    }

    std::vector<MonteCarloEstimate> out;
    out.reserve(sample_counts.size());
    std::uint64_t first_index = 0;
    for (std::size_t count : sample_counts) {
        out.push_back(estimate_range(b, n_antennas, dod, count, seed, first_index, n_threads));
        first_index += count;
    }
    return out;
}

}  // namespace beamloss
