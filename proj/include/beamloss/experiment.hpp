// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beamloss/closed_form.hpp"
#include "beamloss/estimators.hpp"
#include "beamloss/impairment_model.hpp"
#include "beamloss/worst_case_search.hpp"

namespace beamloss {

// One experiment description, loadable from a flat `key = value` config file
// (see README for the schema) with every key overridable by a CLI flag.
struct ExperimentConfig {
    std::size_t n_antennas = 16;
    double spacing = 0.5;                  // element spacing, wavelengths
    ImpairmentBounds bounds{0.1, 0.1, 0.1};
    double theta_start_deg = 0.0;
    double theta_stop_deg = 90.0;
    double theta_step_deg = 1.0;
    std::size_t mc_samples = 20000;
    std::size_t pso_particles = 64;
    std::size_t pso_iterations = 200;
    std::size_t pso_restarts = 16;
    std::uint64_t seed = 1;

    // Gain grid for the correlation surface; rho_start defaults to 1 - delta_g.
    std::optional<double> rho_start;
    double rho_stop = 1.0;
    double rho_step = 0.01;

    void validate() const;  // throws std::invalid_argument
    PsoConfig pso_config(std::uint64_t pso_seed) const;
};

// Departure angle grid in degrees: theta_start_deg + r * theta_step_deg,
// last point clamped onto theta_stop_deg when the step lands there.
std::vector<double> theta_grid_degrees(const ExperimentConfig& cfg);

struct SweepRow {
    double theta_deg;
    double worst_theory_db;         // closed-form worst case
    double worst_search_db;         // swarm search, min_correlation^2 / N
    double avg_theory_db;           // closed-form average
    double avg_mc_db;               // Monte Carlo mean, converted to dB
    double avg_mc_stderr_linear;    // standard error of the MC mean, linear
};

struct SurfaceRow {
    double rho;
    double theta_deg;
    double correlation;  // |<response, steering>| at the worst-case corner
};

// Loss-versus-angle sweep. Row r derives its Monte Carlo and swarm seeds
// from (cfg.seed, r), and rows are independent work items, so the output is
// identical for any n_threads. Every row is checked against the bound
// worst_search_db >= worst_theory_db - 0.1 dB before it is returned.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, unsigned n_threads = 1);

// Correlation surface over (rho, theta): every gain at the grid value rho,
// displacements at the canonical worst-case corner (+/- delta_p, balanced),
// phase offsets zero. Requires an even antenna count; the rho grid must lie
// within [1 - delta_g, 1].
std::vector<SurfaceRow> run_surface(const ExperimentConfig& cfg);

// CSV writers: header row, 12 significant digits, '\n' terminated. dB cells
// whose linear value is below 1e-30 are emitted as the literal "-inf".
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_surface_csv(const std::vector<SurfaceRow>& rows, std::ostream& out);

std::string csv_number(double v);   // %.12g
std::string csv_db(double db);      // %.12g with the -inf floor below -300 dB

struct WorstCaseReport {
    double theta_deg = 0.0;
    std::size_t n_antennas = 0;
    LossValue loss{1.0, 0.0};
    bool has_canonical = false;          // even array sizes only
    ImpairmentRealization canonical;
    bool enumeration_ran = false;        // n within the enumeration cap
    double enumeration_min_correlation = 0.0;
    double enumeration_loss_gap = 0.0;   // |corner loss - closed form|, linear
    std::size_t optimal_pattern_count = 0;
    std::size_t expected_pattern_count = 0;  // C(n, n/2), even n
    bool argmin_balanced = false;
};

WorstCaseReport run_worst(const ExperimentConfig& cfg, double theta_deg);
void print_worst(const WorstCaseReport& report, std::ostream& out);

struct AverageReport {
    double theta_deg = 0.0;
    std::size_t n_antennas = 0;
    LossValue theory{1.0, 0.0};
    MonteCarloEstimate mc{};
    double z_score = 0.0;  // (mc mean - theory) / std error
};

AverageReport run_average(const ExperimentConfig& cfg, double theta_deg,
                          unsigned n_threads = 1);
void print_average(const AverageReport& report, std::ostream& out);

// Built-in oracle suite: corner enumeration versus the worst-case closed
// form, the (3N+1)/(12N) identity of the average-loss formula at full gain
// span, Monte Carlo agreement with the average-loss formula, and swarm
// search soundness and effectiveness.
struct SelfCheckReport {
    struct Check {
        std::string name;
        bool pass = false;
        std::string detail;
    };
    std::vector<Check> checks;

    bool all_pass() const;
};

SelfCheckReport run_selfcheck(std::uint64_t seed, unsigned n_threads = 1);
void print_selfcheck(const SelfCheckReport& report, std::ostream& out);

}  // namespace beamloss
