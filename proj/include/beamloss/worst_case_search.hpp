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

enum class SearchMethod { corner_enumeration, pso, random_probe };

struct SearchResult {
    double min_correlation = 0.0;    // smallest |<response, steering>| found
    ImpairmentRealization argmin;    // always inside the impairment box
    SearchMethod method = SearchMethod::corner_enumeration;
    std::uint64_t evaluations = 0;
};

struct CornerSearchResult {
    SearchResult result;
    SignPattern argmin_signs;              // corner signs at the argmin
    std::size_t optimal_pattern_count = 0; // corners within tolerance of the minimum
};

struct PsoConfig {
    std::size_t n_particles = 64;
    std::size_t n_iterations = 200;
    double inertia = 0.729;    // constriction weight
    double cognitive = 1.49445;
    double social = 1.49445;
    // Restarts are the diversity knob here. Each restart settles into some
    // sign-pattern basin; unbalanced basins trap roughly half of them at
    // N = 16, and only the best restart counts, so 16 keeps the chance of
    // every restart missing a globally optimal basin negligible.
    std::size_t n_restarts = 16;
    std::uint64_t seed = 0;
};

// Evaluates all 2^n corner phase assignments: every antenna at gain
// 1 - delta_g with effective phase +psi or -psi, psi = 2*pi*(delta_p*
// cos(theta) + alpha_g). The count of corners within degeneracy_tol of the
// minimum is reported; for even n the minimum equals
// sqrt(N)*(1-delta_g)*cos(psi) and exactly C(n, n/2) balanced corners attain
// it. Throws for n = 0 or n > cap.
CornerSearchResult enumerate_corner_minimum(const ImpairmentBounds& b, std::size_t n,
                                            const DirectionOfDeparture& dod,
                                            std::size_t cap = 16,
                                            double degeneracy_tol = 1e-9);

// Particle swarm minimization of the correlation over the full 3n-dimensional
// continuous impairment box (n gains, n phases, n displacements).
// Constriction-form velocity update with synchronous best updates; velocities
// are clamped to the box width and positions to the box. Each restart's final
// leader is then polished by a deterministic shrinking-step axis descent,
// because a collapsed swarm stops a little short of its basin floor in high
// dimension. Restarts run on independent substreams of cfg.seed and the best
// restart wins (ties go to the lowest restart index), so the result is
// deterministic for any n_threads. If best_trace is non-null it receives,
// restart-major, the pre-polish best-so-far objective after initialization
// and after each iteration (n_restarts blocks of n_iterations + 1 entries,
// each block non-increasing); min_correlation may improve on the trace floor.
SearchResult pso_minimize(const ImpairmentBounds& b, std::size_t n,
                          const DirectionOfDeparture& dod, const PsoConfig& cfg,
                          unsigned n_threads = 1, std::vector<double>* best_trace = nullptr);

// Baseline sanity probe: n_probes uniform draws from the box, smallest
// correlation wins. Interior sampling never beats the corner minimum.
SearchResult random_interior_probe(const ImpairmentBounds& b, std::size_t n,
                                   const DirectionOfDeparture& dod, std::size_t n_probes,
                                   std::uint64_t seed);

}  // namespace beamloss
