// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments
//
// Exit codes: 0 success, 1 invalid input, 2 selfcheck failure, 3 I/O error.

#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "beamloss/experiment.hpp"

namespace {

// Writes through fn to path ('-' or empty = stdout). Returns the process
// exit code: 0 on success, 3 when the path cannot be opened or written.
int write_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return std::cout.good() ? 0 : 3;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open output file: " << path << '\n';
        return 3;
    }
    fn(file);
    file.flush();
    if (!file.good()) {
        std::cerr << "error: failed while writing: " << path << '\n';
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    beamloss::ExperimentConfig cfg;
    unsigned threads = 1;
    std::string out_path;
    double theta_deg = 0.0;
    double rho_start = 0.0;

    CLI::App app{"Beamforming SNR loss under per-antenna gain, phase, and position "
                 "impairments of a uniform linear array"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat `key = value` configuration file");
    app.allow_config_extras(false);  // misspelled keys should fail, not vanish

    app.add_option("--n_antennas", cfg.n_antennas, "number of antennas")
        ->capture_default_str();
    app.add_option("--spacing", cfg.spacing, "element spacing in wavelengths")
        ->capture_default_str();
    app.add_option("--delta_g", cfg.bounds.delta_g, "gain span: rho_i in [1-delta_g, 1]")
        ->capture_default_str();
    app.add_option("--alpha_g", cfg.bounds.alpha_g, "phase half-width in cycles")
        ->capture_default_str();
    app.add_option("--delta_p", cfg.bounds.delta_p, "displacement half-width in wavelengths")
        ->capture_default_str();
    app.add_option("--theta_start_deg", cfg.theta_start_deg, "sweep start angle, degrees")
        ->capture_default_str();
    app.add_option("--theta_stop_deg", cfg.theta_stop_deg, "sweep stop angle, degrees")
        ->capture_default_str();
    app.add_option("--theta_step_deg", cfg.theta_step_deg, "sweep angle step, degrees")
        ->capture_default_str();
    app.add_option("--mc_samples", cfg.mc_samples, "Monte Carlo sample count")
        ->capture_default_str();
    app.add_option("--pso_particles", cfg.pso_particles, "swarm particle count")
        ->capture_default_str();
    app.add_option("--pso_iterations", cfg.pso_iterations, "swarm iteration count")
        ->capture_default_str();
    app.add_option("--pso_restarts", cfg.pso_restarts, "independent swarm restarts")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "experiment seed")->capture_default_str();
    CLI::Option* rho_start_opt =
        app.add_option("--rho_start", rho_start, "surface gain grid start (default 1 - delta_g)");
    app.add_option("--rho_stop", cfg.rho_stop, "surface gain grid stop")->capture_default_str();
    app.add_option("--rho_step", cfg.rho_step, "surface gain grid step")->capture_default_str();
    app.add_option("--threads", threads, "worker threads")->capture_default_str();
    app.add_option("--out", out_path, "output path; '-' = stdout for reports");

    CLI::App* sweep =
        app.add_subcommand("sweep", "loss-versus-angle CSV: closed forms, swarm search, "
                                    "Monte Carlo (default out: sweep.csv)");
    CLI::App* surface =
        app.add_subcommand("surface", "correlation over (rho, theta) at the worst-case "
                                      "displacement corner (default out: surface.csv)");
    CLI::App* worst = app.add_subcommand("worst", "worst-case loss report at one angle");
    CLI::App* average = app.add_subcommand("average", "average loss report at one angle");
    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the built-in oracle suite");
    worst->add_option("--theta_deg", theta_deg, "departure angle, degrees")
        ->capture_default_str();
    average->add_option("--theta_deg", theta_deg, "departure angle, degrees")
        ->capture_default_str();
    for (CLI::App* sub : {sweep, surface, worst, average, selfcheck}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (*rho_start_opt) cfg.rho_start = rho_start;

    try {
        if (sweep->parsed()) {
            const std::vector<beamloss::SweepRow> rows = beamloss::run_sweep(cfg, threads);
            const std::string path = out_path.empty() ? "sweep.csv" : out_path;
            return write_output(path,
                                [&](std::ostream& os) { beamloss::write_sweep_csv(rows, os); });
        }
        if (surface->parsed()) {
            const std::vector<beamloss::SurfaceRow> rows = beamloss::run_surface(cfg);
            const std::string path = out_path.empty() ? "surface.csv" : out_path;
            return write_output(
                path, [&](std::ostream& os) { beamloss::write_surface_csv(rows, os); });
        }
        if (worst->parsed()) {
            const beamloss::WorstCaseReport report = beamloss::run_worst(cfg, theta_deg);
            return write_output(out_path,
                                [&](std::ostream& os) { beamloss::print_worst(report, os); });
        }
        if (average->parsed()) {
            const beamloss::AverageReport report =
                beamloss::run_average(cfg, theta_deg, threads);
            return write_output(out_path,
                                [&](std::ostream& os) { beamloss::print_average(report, os); });
        }
        if (selfcheck->parsed()) {
            const beamloss::SelfCheckReport report = beamloss::run_selfcheck(cfg.seed, threads);
            const int io = write_output(
                out_path, [&](std::ostream& os) { beamloss::print_selfcheck(report, os); });
            if (io != 0) return io;
            return report.all_pass() ? 0 : 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
