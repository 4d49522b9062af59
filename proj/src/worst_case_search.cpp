// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "beamloss/worst_case_search.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "beamloss/closed_form.hpp"
#include "beamloss/parallel.hpp"
#include "beamloss/rng.hpp"

namespace beamloss {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

ImpairmentRealization corner_realization(const ImpairmentBounds& b, const SignPattern& signs) {
    const std::size_t n = signs.size();
    ImpairmentRealization r;
    r.rho.assign(n, 1.0 - b.delta_g);
    r.phi.resize(n);
    r.eps_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = static_cast<double>(signs.signs[i]);
        r.eps_x[i] = p * b.delta_p;
        r.phi[i] = -p * b.alpha_g;
    }
    return r;
}

// Axis-aligned descent with geometrically shrinking steps, projected onto the
// box. A collapsed swarm leaves its leader a short distance from the true
// minimizer; this walks that last stretch deterministically. Sees only
// function values, so it adds no structural knowledge the swarm lacks.
template <typename F>
void compass_descent(F&& objective, std::vector<double>& x, double& fx,
                     const std::vector<double>& lo, const std::vector<double>& hi,
                     std::uint64_t& evals) {
    const std::size_t dims = x.size();
    std::vector<double> step(dims);
    for (std::size_t d = 0; d < dims; ++d) step[d] = 0.25 * (hi[d] - lo[d]);

    // 44 halvings take the step below 1e-13 of the box width.
    for (int level = 0; level < 44; ++level) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t d = 0; d < dims; ++d) {
                if (!(step[d] > 0.0)) continue;
                const double old = x[d];
                for (const double dir : {1.0, -1.0}) {
                    double y = old + dir * step[d];
                    if (y < lo[d]) y = lo[d];
                    if (y > hi[d]) y = hi[d];
                    if (y == old) continue;
                    x[d] = y;
                    const double fy = objective(x);
                    ++evals;
                    if (fy < fx) {
                        fx = fy;
                        improved = true;
                        break;
                    }
                    x[d] = old;
                }
            }
        }
        for (std::size_t d = 0; d < dims; ++d) step[d] *= 0.5;
    }
}

}  // namespace

CornerSearchResult enumerate_corner_minimum(const ImpairmentBounds& b, std::size_t n,
                                            const DirectionOfDeparture& dod, std::size_t cap,
                                            double degeneracy_tol) {
    validate_bounds(b);
    if (n == 0)
        throw std::invalid_argument("enumerate_corner_minimum: antenna count must be at least 1");
    if (n > cap || n >= 64)
        throw std::invalid_argument("enumerate_corner_minimum: n exceeds the enumeration cap");

    const double rho = 1.0 - b.delta_g;
    const double psi = two_pi * (b.delta_p * dod.cos_theta() + b.alpha_g);
    const std::complex<double> plus = std::polar(rho, psi);
    const std::complex<double> minus = std::polar(rho, -psi);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));

    const std::uint64_t n_corners = std::uint64_t{1} << n;
    std::vector<double> values(n_corners);
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 0; mask < n_corners; ++mask) {
        std::complex<double> s{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) s += (mask >> i & 1u) ? plus : minus;
        const double mag = scale * std::abs(s);
        values[mask] = mag;
        if (mag < best) {
            best = mag;
            best_mask = mask;
        }
    }

    std::size_t count = 0;
    for (double v : values)
        if (v <= best + degeneracy_tol) ++count;

    SignPattern signs;
    signs.signs.resize(n);
    for (std::size_t i = 0; i < n; ++i) signs.signs[i] = (best_mask >> i & 1u) ? +1 : -1;

    CornerSearchResult out;
    out.result.min_correlation = best;
    out.result.argmin = corner_realization(b, signs);
    out.result.method = SearchMethod::corner_enumeration;
    out.result.evaluations = n_corners;
    out.argmin_signs = std::move(signs);
    out.optimal_pattern_count = count;
    return out;
}

SearchResult pso_minimize(const ImpairmentBounds& b, std::size_t n,
                          const DirectionOfDeparture& dod, const PsoConfig& cfg,
                          unsigned n_threads, std::vector<double>* best_trace) {
    validate_bounds(b);
    if (n == 0)
        throw std::invalid_argument("pso_minimize: antenna count must be at least 1");
    if (cfg.n_particles < 2)
        throw std::invalid_argument("pso_minimize: need at least 2 particles");
    if (cfg.n_iterations < 1)
        throw std::invalid_argument("pso_minimize: need at least 1 iteration");
    if (cfg.n_restarts < 1)
        throw std::invalid_argument("pso_minimize: need at least 1 restart");
    if (!(cfg.inertia >= 0.0) || !(cfg.cognitive >= 0.0) || !(cfg.social >= 0.0) ||
        !std::isfinite(cfg.inertia) || !std::isfinite(cfg.cognitive) || !std::isfinite(cfg.social))
        throw std::invalid_argument("pso_minimize: coefficients must be finite and nonnegative");

    const ArrayGeometry geom = nominal_positions(n, 0.5);
    const SteeringVector steering = nominal_steering(geom, dod);

    // Search space: [rho_1..rho_n, phi_1..phi_n, eps_1..eps_n].
    const std::size_t dims = 3 * n;
    std::vector<double> lo(dims), hi(dims), width(dims);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = 1.0 - b.delta_g;
        hi[i] = 1.0;
        lo[n + i] = -b.alpha_g;
        hi[n + i] = b.alpha_g;
        lo[2 * n + i] = -b.delta_p;
        hi[2 * n + i] = b.delta_p;
    }
    for (std::size_t d = 0; d < dims; ++d) width[d] = hi[d] - lo[d];

    ImpairmentRealization scratch_proto;
    scratch_proto.rho.resize(n);
    scratch_proto.phi.resize(n);
    scratch_proto.eps_x.resize(n);

    struct RestartOutcome {
        double best_value = std::numeric_limits<double>::infinity();
        std::vector<double> best_position;
        std::vector<double> trace;
        std::uint64_t evals = 0;
    };
    std::vector<RestartOutcome> outcomes(cfg.n_restarts);
    const RandomStream stream(cfg.seed);

    detail::parallel_for(cfg.n_restarts, n_threads, [&](std::size_t restart) {
        SubStream rng = stream.substream(restart);
        ImpairmentRealization scratch = scratch_proto;
        auto objective = [&](const std::vector<double>& x) {
            for (std::size_t i = 0; i < n; ++i) {
                scratch.rho[i] = x[i];
                scratch.phi[i] = x[n + i];
                scratch.eps_x[i] = x[2 * n + i];
            }
            return correlation_magnitude(perturbed_response(geom, dod, scratch), steering);
        };

        const std::size_t P = cfg.n_particles;
        std::vector<std::vector<double>> pos(P, std::vector<double>(dims));
        std::vector<std::vector<double>> vel(P, std::vector<double>(dims, 0.0));
        std::vector<std::vector<double>> pbest_pos(P);
        std::vector<double> pbest_val(P);
        std::vector<double> value(P);

        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t d = 0; d < dims; ++d)
                pos[p][d] = rng.next_uniform(lo[d], hi[d]);
        for (std::size_t p = 0; p < P; ++p) {
            value[p] = objective(pos[p]);
            pbest_pos[p] = pos[p];
            pbest_val[p] = value[p];
        }

        std::size_t gbest = 0;
        for (std::size_t p = 1; p < P; ++p)
            if (pbest_val[p] < pbest_val[gbest]) gbest = p;
        std::vector<double> gbest_pos = pbest_pos[gbest];
        double gbest_val = pbest_val[gbest];

        RestartOutcome& out = outcomes[restart];
        out.trace.reserve(cfg.n_iterations + 1);
        out.trace.push_back(gbest_val);

        for (std::size_t it = 0; it < cfg.n_iterations; ++it) {
            // Synchronous update: all moves use the bests from the previous
            // iteration; bests refresh only after every particle has moved.
            for (std::size_t p = 0; p < P; ++p) {
                for (std::size_t d = 0; d < dims; ++d) {
                    const double r1 = rng.next_unit();
                    const double r2 = rng.next_unit();
                    double v = cfg.inertia * vel[p][d] +
                               cfg.cognitive * r1 * (pbest_pos[p][d] - pos[p][d]) +
                               cfg.social * r2 * (gbest_pos[d] - pos[p][d]);
                    if (v > width[d]) v = width[d];
                    if (v < -width[d]) v = -width[d];
                    vel[p][d] = v;
                    double x = pos[p][d] + v;
                    if (x < lo[d]) x = lo[d];
                    if (x > hi[d]) x = hi[d];
                    pos[p][d] = x;
                }
            }
            for (std::size_t p = 0; p < P; ++p) {
                value[p] = objective(pos[p]);
                if (value[p] < pbest_val[p]) {
                    pbest_val[p] = value[p];
                    pbest_pos[p] = pos[p];
                }
            }
            for (std::size_t p = 0; p < P; ++p) {
                if (pbest_val[p] < gbest_val) {
                    gbest_val = pbest_val[p];
                    gbest_pos = pbest_pos[p];
                }
            }
            out.trace.push_back(gbest_val);
        }

        out.evals = static_cast<std::uint64_t>(P) * (cfg.n_iterations + 1);
        // In high dimension the swarm stalls a little short of the optimum:
        // once every particle sits on the leader the velocities decay to zero
        // and no one samples the remaining gap. Finish the descent locally.
        compass_descent(objective, gbest_pos, gbest_val, lo, hi, out.evals);

        out.best_value = gbest_val;
        out.best_position = std::move(gbest_pos);
    });

    std::size_t winner = 0;
    for (std::size_t r = 1; r < cfg.n_restarts; ++r)
        if (outcomes[r].best_value < outcomes[winner].best_value) winner = r;

    if (best_trace) {
        best_trace->clear();
        for (const RestartOutcome& o : outcomes)
            best_trace->insert(best_trace->end(), o.trace.begin(), o.trace.end());
    }

    SearchResult out;
    out.min_correlation = outcomes[winner].best_value;
    const std::vector<double>& x = outcomes[winner].best_position;
    out.argmin.rho.assign(x.begin(), x.begin() + n);
    out.argmin.phi.assign(x.begin() + n, x.begin() + 2 * n);
    out.argmin.eps_x.assign(x.begin() + 2 * n, x.end());
    out.method = SearchMethod::pso;
    out.evaluations = 0;
    for (const RestartOutcome& o : outcomes) out.evaluations += o.evals;
    return out;
}

SearchResult random_interior_probe(const ImpairmentBounds& b, std::size_t n,
                                   const DirectionOfDeparture& dod, std::size_t n_probes,
                                   std::uint64_t seed) {
    validate_bounds(b);
    if (n == 0)
        throw std::invalid_argument("random_interior_probe: antenna count must be at least 1");
    if (n_probes == 0)
        throw std::invalid_argument("random_interior_probe: need at least 1 probe");

    const ArrayGeometry geom = nominal_positions(n, 0.5);
    const SteeringVector steering = nominal_steering(geom, dod);
    const RandomStream stream(seed);

    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_k = 0;
    for (std::uint64_t k = 0; k < n_probes; ++k) {
        SubStream sub = stream.substream(k);
        const ImpairmentRealization r = sample_realization(b, n, sub);
        const double mag = correlation_magnitude(perturbed_response(geom, dod, r), steering);
        if (mag < best) {
            best = mag;
            best_k = k;
        }
    }

    // Substreams are pure functions of (seed, k): regenerate the winner.
    SubStream sub = stream.substream(best_k);
    SearchResult out;
    out.min_correlation = best;
    out.argmin = sample_realization(b, n, sub);
    out.method = SearchMethod::random_probe;
    out.evaluations = n_probes;
    return out;
}

}  // namespace beamloss
