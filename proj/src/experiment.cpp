// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#include "beamloss/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "beamloss/parallel.hpp"
#include "beamloss/rng.hpp"

namespace beamloss {

namespace {

// Seed lanes carved out of the experiment seed.
constexpr std::uint64_t kMcLane = 0;
constexpr std::uint64_t kPsoLane = 1;
constexpr std::uint64_t kSelfBoundsLane = 7;
constexpr std::uint64_t kSelfMcLane = 8;
constexpr std::uint64_t kSelfPsoLane = 9;

std::vector<double> linear_grid(double start, double stop, double step) {
    const std::size_t count =
        static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        double v = start + static_cast<double>(i) * step;
        if (v > stop) v = stop;
        out[i] = v;
    }
    return out;
}

double db_of_linear(double linear) {
    return linear > 0.0 ? 10.0 * std::log10(linear)
                        : -std::numeric_limits<double>::infinity();
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact: r*(n-k+i) is divisible by i at each step
    }
    return r;
}

std::string format(const char* fmt, double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, a);
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n_antennas == 0)
        throw std::invalid_argument("config: n_antennas must be at least 1");
    if (!(spacing > 0.0)) throw std::invalid_argument("config: spacing must be positive");
    validate_bounds(bounds);
    if (!(theta_start_deg >= 0.0 && theta_start_deg <= 90.0))
        throw std::invalid_argument("config: theta_start_deg must lie in [0, 90]");
    if (!(theta_stop_deg >= theta_start_deg && theta_stop_deg <= 90.0))
        throw std::invalid_argument("config: theta_stop_deg must lie in [theta_start_deg, 90]");
    if (!(theta_step_deg > 0.0))
        throw std::invalid_argument("config: theta_step_deg must be positive");
    if (mc_samples < 2) throw std::invalid_argument("config: mc_samples must be at least 2");
    if (pso_particles < 2)
        throw std::invalid_argument("config: pso_particles must be at least 2");
    if (pso_iterations < 1)
        throw std::invalid_argument("config: pso_iterations must be at least 1");
    if (pso_restarts < 1)
        throw std::invalid_argument("config: pso_restarts must be at least 1");
}

PsoConfig ExperimentConfig::pso_config(std::uint64_t pso_seed) const {
    PsoConfig cfg;
    cfg.n_particles = pso_particles;
    cfg.n_iterations = pso_iterations;
    cfg.n_restarts = pso_restarts;
    cfg.seed = pso_seed;
    return cfg;
}

std::vector<double> theta_grid_degrees(const ExperimentConfig& cfg) {
    cfg.validate();
    return linear_grid(cfg.theta_start_deg, cfg.theta_stop_deg, cfg.theta_step_deg);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, unsigned n_threads) {
    const std::vector<double> thetas = theta_grid_degrees(cfg);
    std::vector<SweepRow> rows(thetas.size());

    detail::parallel_for(thetas.size(), n_threads, [&](std::size_t r) {
        const DirectionOfDeparture dod = DirectionOfDeparture::from_degrees(thetas[r]);
        const LossValue worst = worst_case_snr_loss(cfg.bounds, dod);
        const LossValue avg = average_snr_loss(cfg.bounds, dod, cfg.n_antennas);
        const SearchResult search =
            pso_minimize(cfg.bounds, cfg.n_antennas, dod,
                         cfg.pso_config(derive_seed(cfg.seed, kPsoLane, r)));
        const MonteCarloEstimate mc =
            estimate_average_loss(cfg.bounds, cfg.n_antennas, dod, cfg.mc_samples,
                                  derive_seed(cfg.seed, kMcLane, r));

        const double search_linear =
            search.min_correlation * search.min_correlation / static_cast<double>(cfg.n_antennas);

        SweepRow& row = rows[r];
        row.theta_deg = thetas[r];
        row.worst_theory_db = worst.db;
        row.worst_search_db = db_of_linear(search_linear);
        row.avg_theory_db = avg.db;
        row.avg_mc_db = db_of_linear(mc.mean_linear);
        row.avg_mc_stderr_linear = mc.std_error;

        // Feasible-point searches can never beat the exact worst case.
        if (!(row.worst_search_db >= row.worst_theory_db - 0.1))
            throw std::logic_error("run_sweep: search undercut the worst-case bound");
    });
    return rows;
}

std::vector<SurfaceRow> run_surface(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.n_antennas % 2 != 0)
        throw std::invalid_argument(
            "run_surface: the worst-case displacement pattern needs an even antenna count");

    const double rho_lo = 1.0 - cfg.bounds.delta_g;
    const double start = cfg.rho_start.value_or(rho_lo);
    if (!(cfg.rho_step > 0.0))
        throw std::invalid_argument("run_surface: rho_step must be positive");
    if (!(start >= rho_lo - 1e-12 && start <= cfg.rho_stop + 1e-12 &&
          cfg.rho_stop <= 1.0 + 1e-12))
        throw std::invalid_argument(
            "run_surface: rho grid must lie within [1 - delta_g, 1]");

    const std::vector<double> rhos = linear_grid(start, cfg.rho_stop, cfg.rho_step);
    const std::vector<double> thetas = theta_grid_degrees(cfg);

    const ArrayGeometry geom = nominal_positions(cfg.n_antennas, cfg.spacing);
    const SignPattern signs = SignPattern::canonical(cfg.n_antennas);

    std::vector<DirectionOfDeparture> dods;
    std::vector<SteeringVector> steerings;
    dods.reserve(thetas.size());
    steerings.reserve(thetas.size());
    for (double t : thetas) {
        dods.push_back(DirectionOfDeparture::from_degrees(t));
        steerings.push_back(nominal_steering(geom, dods.back()));
    }

    ImpairmentRealization r;
    r.rho.assign(cfg.n_antennas, 1.0);
    r.phi.assign(cfg.n_antennas, 0.0);
    r.eps_x.resize(cfg.n_antennas);
    for (std::size_t i = 0; i < cfg.n_antennas; ++i)
        r.eps_x[i] = static_cast<double>(signs.signs[i]) * cfg.bounds.delta_p;

    std::vector<SurfaceRow> rows;
    rows.reserve(rhos.size() * thetas.size());
    for (double rho : rhos) {
        r.rho.assign(cfg.n_antennas, rho);
        for (std::size_t t = 0; t < thetas.size(); ++t) {
            const double mag =
                correlation_magnitude(perturbed_response(geom, dods[t], r), steerings[t]);
            rows.push_back(SurfaceRow{rho, thetas[t], mag});
        }
    }
    return rows;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_db(double db) {
    // 10*log10(1e-30) = -300: anything below the floor prints as -inf.
    if (std::isinf(db) || db < -300.0) return "-inf";
    return csv_number(db);
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "theta_deg,worst_theory_db,worst_search_db,avg_theory_db,avg_mc_db,"
           "avg_mc_stderr_linear\n";
    for (const SweepRow& r : rows) {
        out << csv_number(r.theta_deg) << ',' << csv_db(r.worst_theory_db) << ','
            << csv_db(r.worst_search_db) << ',' << csv_db(r.avg_theory_db) << ','
            << csv_db(r.avg_mc_db) << ',' << csv_number(r.avg_mc_stderr_linear) << '\n';
    }
}

void write_surface_csv(const std::vector<SurfaceRow>& rows, std::ostream& out) {
    out << "rho,theta_deg,correlation\n";
    for (const SurfaceRow& r : rows)
        out << csv_number(r.rho) << ',' << csv_number(r.theta_deg) << ','
            << csv_number(r.correlation) << '\n';
}

WorstCaseReport run_worst(const ExperimentConfig& cfg, double theta_deg) {
    cfg.validate();
    const DirectionOfDeparture dod = DirectionOfDeparture::from_degrees(theta_deg);

    WorstCaseReport report;
    report.theta_deg = theta_deg;
    report.n_antennas = cfg.n_antennas;
    report.loss = worst_case_snr_loss(cfg.bounds, dod);
    report.has_canonical = cfg.n_antennas % 2 == 0;
    if (report.has_canonical)
        report.canonical = worst_case_realization(cfg.bounds, cfg.n_antennas, dod.theta());

    if (cfg.n_antennas <= 16) {
        const CornerSearchResult corner =
            enumerate_corner_minimum(cfg.bounds, cfg.n_antennas, dod);
        report.enumeration_ran = true;
        report.enumeration_min_correlation = corner.result.min_correlation;
        const double corner_loss = corner.result.min_correlation *
                                   corner.result.min_correlation /
                                   static_cast<double>(cfg.n_antennas);
        report.enumeration_loss_gap = std::abs(corner_loss - report.loss.linear);
        report.optimal_pattern_count = corner.optimal_pattern_count;
        report.argmin_balanced = corner.argmin_signs.is_balanced();
        if (report.has_canonical)
            report.expected_pattern_count = binomial(cfg.n_antennas, cfg.n_antennas / 2);
    }
    return report;
}

void print_worst(const WorstCaseReport& report, std::ostream& out) {
    out << "worst-case SNR loss\n";
    out << "  n_antennas        : " << report.n_antennas << '\n';
    out << "  theta_deg         : " << csv_number(report.theta_deg) << '\n';
    out << "  loss_linear       : " << csv_number(report.loss.linear) << '\n';
    out << "  loss_db           : " << csv_db(report.loss.db) << '\n';
    if (report.has_canonical) {
        out << "  canonical worst-case corner (rho, phi_cycles, eps_x_wavelengths):\n";
        for (std::size_t i = 0; i < report.canonical.size(); ++i) {
            char line[96];
            std::snprintf(line, sizeof(line), "    [%2zu]  %-12.6g %-12.6g %-12.6g\n", i,
                          report.canonical.rho[i], report.canonical.phi[i],
                          report.canonical.eps_x[i]);
            out << line;
        }
    } else {
        out << "  canonical corner  : (requires an even antenna count; closed form assumes\n"
               "                       an even split, shown value is that even-split level)\n";
    }
    if (report.enumeration_ran) {
        out << "  corner enumeration:\n";
        out << "    min correlation : " << csv_number(report.enumeration_min_correlation)
            << '\n';
        out << "    gap to closed form (linear): "
            << format("%.3e", report.enumeration_loss_gap) << '\n';
        out << "    optimal sign patterns: " << report.optimal_pattern_count;
        if (report.has_canonical)
            out << " (expected C(N, N/2) = " << report.expected_pattern_count << ")";
        out << '\n';
        out << "    argmin balanced : " << (report.argmin_balanced ? "yes" : "no") << '\n';
    }
}

AverageReport run_average(const ExperimentConfig& cfg, double theta_deg, unsigned n_threads) {
    cfg.validate();
    const DirectionOfDeparture dod = DirectionOfDeparture::from_degrees(theta_deg);

    AverageReport report;
    report.theta_deg = theta_deg;
    report.n_antennas = cfg.n_antennas;
    report.theory = average_snr_loss(cfg.bounds, dod, cfg.n_antennas);
    report.mc = estimate_average_loss(cfg.bounds, cfg.n_antennas, dod, cfg.mc_samples,
                                      derive_seed(cfg.seed, kMcLane, 0), n_threads);
    report.z_score = report.mc.std_error > 0.0
                         ? (report.mc.mean_linear - report.theory.linear) / report.mc.std_error
                         : 0.0;
    return report;
}

void print_average(const AverageReport& report, std::ostream& out) {
    out << "average SNR loss\n";
    out << "  n_antennas        : " << report.n_antennas << '\n';
    out << "  theta_deg         : " << csv_number(report.theta_deg) << '\n';
    out << "  theory_linear     : " << csv_number(report.theory.linear) << '\n';
    out << "  theory_db         : " << csv_db(report.theory.db) << '\n';
    out << "  mc_mean_linear    : " << csv_number(report.mc.mean_linear) << '\n';
    out << "  mc_mean_db        : " << csv_db(db_of_linear(report.mc.mean_linear)) << '\n';
    out << "  mc_stderr_linear  : " << csv_number(report.mc.std_error) << '\n';
    out << "  mc_samples        : " << report.mc.n_samples << '\n';
    out << "  z_score           : " << format("%.3f", report.z_score) << '\n';
}

bool SelfCheckReport::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

SelfCheckReport run_selfcheck(std::uint64_t seed, unsigned n_threads) {
    SelfCheckReport report;

    // Corner enumeration versus the worst-case closed form, with exact
    // degeneracy counts and balanced argmins, over sizes, angles, and bounds.
    {
        std::vector<ImpairmentBounds> bounds_sets = {
            {0.1, 0.1, 0.1}, {0.1, 0.12, 0.12}, {0.3, 0.05, 0.02}};
        SubStream draw(derive_seed(seed, kSelfBoundsLane, 0));
        for (int i = 0; i < 3; ++i) {
            ImpairmentBounds b;
            b.delta_g = draw.next_uniform(0.0, 0.5);
            b.alpha_g = draw.next_uniform(0.01, 0.12);
            b.delta_p = draw.next_uniform(0.01, std::min(0.12, 0.23 - b.alpha_g));
            bounds_sets.push_back(b);
        }

        double max_gap = 0.0;
        std::size_t cases = 0;
        bool counts_ok = true;
        bool balanced_ok = true;
        for (std::size_t n : {std::size_t{2}, std::size_t{4}, std::size_t{6}, std::size_t{8}}) {
            for (double theta : {0.0, 45.0, 90.0}) {
                const DirectionOfDeparture dod = DirectionOfDeparture::from_degrees(theta);
                for (const ImpairmentBounds& b : bounds_sets) {
                    const CornerSearchResult corner = enumerate_corner_minimum(b, n, dod);
                    const double expected =
                        std::sqrt(worst_case_snr_loss(b, dod).linear * static_cast<double>(n));
                    max_gap = std::max(max_gap,
                                       std::abs(corner.result.min_correlation - expected));
                    if (corner.optimal_pattern_count != binomial(n, n / 2)) counts_ok = false;
                    if (!corner.argmin_signs.is_balanced()) balanced_ok = false;
                    ++cases;
                }
            }
        }
        SelfCheckReport::Check c;
        c.name = "corner enumeration matches the worst-case closed form";
        c.pass = max_gap <= 1e-12 && counts_ok && balanced_ok;
        c.detail = "max gap " + format("%.3e", max_gap) + " over " + std::to_string(cases) +
                   " cases; degeneracy counts " + (counts_ok ? "exact" : "WRONG") +
                   ", argmin " + (balanced_ok ? "balanced" : "UNBALANCED");
        report.checks.push_back(std::move(c));
    }

    // Full-gain-span identity: average loss collapses to (3N+1)/(12N).
    {
        const ImpairmentBounds full{1.0, 0.0, 0.0};
        const DirectionOfDeparture dod(0.0);
        double max_gap = 0.0;
        for (std::size_t n = 1; n <= 64; ++n) {
            const double expected = (3.0 * static_cast<double>(n) + 1.0) /
                                    (12.0 * static_cast<double>(n));
            max_gap = std::max(max_gap,
                               std::abs(average_snr_loss(full, dod, n).linear - expected));
        }
        SelfCheckReport::Check c;
        c.name = "average-loss identity at full gain span";
        c.pass = max_gap <= 1e-12;
        c.detail = "max |avg - (3N+1)/(12N)| = " + format("%.3e", max_gap) + " over N=1..64";
        report.checks.push_back(std::move(c));
    }

    // Monte Carlo versus the average-loss closed form.
    {
        const ImpairmentBounds b{0.1, 0.1, 0.1};
        double max_abs_z = 0.0;
        int t = 0;
        for (double theta : {0.0, 45.0, 90.0}) {
            const DirectionOfDeparture dod = DirectionOfDeparture::from_degrees(theta);
            const MonteCarloEstimate mc = estimate_average_loss(
                b, 16, dod, 20000, derive_seed(seed, kSelfMcLane, t++), n_threads);
            const double theory = average_snr_loss(b, dod, 16).linear;
            max_abs_z = std::max(max_abs_z, std::abs(mc.mean_linear - theory) / mc.std_error);
        }
        SelfCheckReport::Check c;
        c.name = "Monte Carlo matches the average-loss formula";
        c.pass = max_abs_z <= 4.0;
        c.detail = "max |z| = " + format("%.2f", max_abs_z) + " over 3 angles (threshold 4)";
        report.checks.push_back(std::move(c));
    }

    // Swarm search: never below the true minimum, and close to it.
    {
        const DirectionOfDeparture dod(0.0);
        double worst_margin = std::numeric_limits<double>::infinity();
        double worst_ratio = 0.0;
        int i = 0;
        for (const ImpairmentBounds& b :
             {ImpairmentBounds{0.1, 0.1, 0.1}, ImpairmentBounds{0.1, 0.12, 0.12}}) {
            PsoConfig cfg;
            cfg.seed = derive_seed(seed, kSelfPsoLane, i++);
            const SearchResult res = pso_minimize(b, 16, dod, cfg, n_threads);
            const double expected = std::sqrt(worst_case_snr_loss(b, dod).linear * 16.0);
            worst_margin = std::min(worst_margin, res.min_correlation - expected);
            worst_ratio = std::max(worst_ratio, res.min_correlation / expected);
        }
        SelfCheckReport::Check c;
        c.name = "swarm search sound and effective";
        c.pass = worst_margin >= -1e-9 && worst_ratio <= 1.005;
        c.detail = "min margin " + format("%+.3e", worst_margin) +
                   " (soundness >= -1e-9), max ratio " + format("%.5f", worst_ratio) +
                   " (effectiveness <= 1.005)";
        report.checks.push_back(std::move(c));
    }

    return report;
}

void print_selfcheck(const SelfCheckReport& report, std::ostream& out) {
    std::size_t passed = 0;
    for (const SelfCheckReport::Check& c : report.checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
        if (c.pass) ++passed;
    }
    out << "selfcheck: " << passed << '/' << report.checks.size() << " checks passed\n";
}

}  // namespace beamloss
