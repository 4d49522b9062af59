// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "beamloss/impairment_model.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace beamloss {

ImpairmentBounds validate_bounds(const ImpairmentBounds& b) {
    if (!(b.delta_g >= 0.0 && b.delta_g <= 1.0))
        throw std::invalid_argument("impairment bounds: delta_g must lie in [0, 1]");
    if (!(b.alpha_g >= 0.0))
        throw std::invalid_argument("impairment bounds: alpha_g must be nonnegative");
    if (!(b.delta_p >= 0.0))
        throw std::invalid_argument("impairment bounds: delta_p must be nonnegative");
    if (!(b.alpha_g + b.delta_p < 0.25))
        throw std::invalid_argument(
            "impairment bounds: alpha_g + delta_p must stay below 1/4 cycle");
    return b;
}

bool within_bounds(const ImpairmentRealization& r, const ImpairmentBounds& b,
                   double tol) noexcept {
    const std::size_t n = r.rho.size();
    if (r.phi.size() != n || r.eps_x.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(r.rho[i] >= 1.0 - b.delta_g - tol && r.rho[i] <= 1.0 + tol)) return false;
        if (!(std::abs(r.phi[i]) <= b.alpha_g + tol)) return false;
        if (!(std::abs(r.eps_x[i]) <= b.delta_p + tol)) return false;
    }
    return true;
}

bool SignPattern::is_balanced() const noexcept {
    long sum = 0;
    for (int s : signs) sum += s;
    return sum == 0;
}

SignPattern SignPattern::canonical(std::size_t n) {
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("SignPattern::canonical: n must be even and positive");
    SignPattern p;
    p.signs.assign(n, -1);
    for (std::size_t i = 0; i < n / 2; ++i) p.signs[i] = +1;
    return p;
}

ImpairmentRealization sample_realization(const ImpairmentBounds& b, std::size_t n,
                                         SubStream& stream) {
    validate_bounds(b);
    if (n == 0) throw std::invalid_argument("sample_realization: antenna count must be at least 1");

    ImpairmentRealization r;
    r.rho.resize(n);
    r.phi.resize(n);
    r.eps_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.rho[i] = stream.next_uniform(1.0 - b.delta_g, 1.0);
    for (std::size_t i = 0; i < n; ++i) r.phi[i] = stream.next_uniform(-b.alpha_g, b.alpha_g);
    for (std::size_t i = 0; i < n; ++i) r.eps_x[i] = stream.next_uniform(-b.delta_p, b.delta_p);
    return r;
}

ImpairmentRealization worst_case_realization(const ImpairmentBounds& b, std::size_t n,
                                             double theta) {
    return worst_case_realization(b, n, theta, SignPattern::canonical(n));
}

ImpairmentRealization worst_case_realization(const ImpairmentBounds& b, std::size_t n,
                                             double theta, const SignPattern& pattern) {
    validate_bounds(b);
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument(
            "worst_case_realization: antenna count must be even and positive");
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 * (1.0 + 1e-12)))
        throw std::invalid_argument("worst_case_realization: theta must lie in [0, pi/2]");
    if (pattern.size() != n)
        throw std::invalid_argument("worst_case_realization: sign pattern length mismatch");
    for (int s : pattern.signs)
        if (s != 1 && s != -1)
            throw std::invalid_argument("worst_case_realization: sign entries must be +1 or -1");
    if (!pattern.is_balanced())
        throw std::invalid_argument("worst_case_realization: sign pattern must be balanced");

    ImpairmentRealization r;
    r.rho.assign(n, 1.0 - b.delta_g);
    r.phi.resize(n);
    r.eps_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p = static_cast<double>(pattern.signs[i]);
        r.eps_x[i] = p * b.delta_p;
        r.phi[i] = -p * b.alpha_g;
    }
    return r;
}

std::vector<SignPattern> balanced_patterns(std::size_t n, std::size_t cap) {
    if (n == 0 || n % 2 != 0)
        throw std::invalid_argument("balanced_patterns: n must be even and positive");
    if (n > cap || n >= 64)
        throw std::invalid_argument("balanced_patterns: n exceeds the enumeration cap");

    std::vector<SignPattern> out;
    const std::uint64_t n_masks = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
        if (std::popcount(mask) != static_cast<int>(n / 2)) continue;
        SignPattern p;
        p.signs.resize(n);
        for (std::size_t i = 0; i < n; ++i) p.signs[i] = (mask >> i & 1u) ? +1 : -1;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace beamloss
