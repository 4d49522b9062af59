// SPDX-License-Identifier: Apache-2.0
//
// beamloss: SNR loss analysis for beamforming with per-antenna array impairments
//
// End-to-end checks of the command-line binary. The path of the built
// executable arrives via the BEAMLOSS_CLI_PATH compile definition.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path& scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() /
                     ("beamloss_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

// Runs a full shell command with stdout/stderr captured to scratch files.
RunResult run_shell(const std::string& command) {
    static int counter = 0;
    const fs::path base = scratch_dir() / ("cmd" + std::to_string(counter++));
    const std::string full = command + " > \"" + base.string() + ".out\" 2> \"" +
                             base.string() + ".err\"";
    const int raw = std::system(full.c_str());
    RunResult r;
    r.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(base.string() + ".out");
    r.err = slurp(base.string() + ".err");
    return r;
}

RunResult run_cli(const std::string& args) {
    return run_shell(std::string("\"") + BEAMLOSS_CLI_PATH + "\" " + args);
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help exits zero and lists every subcommand") {
    const RunResult r = run_cli("--help");
    CHECK(r.code == 0);
    for (const char* sub : {"sweep", "surface", "worst", "average", "selfcheck", "--config"})
        CHECK(contains(r.out, sub));
}

TEST_CASE("parse errors exit with code 1") {
    CHECK(run_cli("").code == 1);                    // a subcommand is required
    CHECK(run_cli("bogus").code == 1);
    CHECK(run_cli("worst --no_such_flag 3").code == 1);
    CHECK(run_cli("worst --n_antennas notanumber").code == 1);
}

TEST_CASE("invalid physics inputs exit 1 and explain themselves") {
    const RunResult r = run_cli("worst --alpha_g 0.2 --delta_p 0.1 --theta_deg 0");
    CHECK(r.code == 1);
    CHECK(contains(r.err, "impairment bounds"));

    const RunResult r2 = run_cli("average --theta_deg 95");
    CHECK(r2.code == 1);
    CHECK(r2.err.find("error:") != std::string::npos);
}

TEST_CASE("config files load and explicit flags override them") {
    const fs::path cfg = scratch_dir() / "exp.cfg";
    {
        std::ofstream f(cfg);
        f << "n_antennas = 8\n"
             "delta_g = 0.2\n"
             "alpha_g = 0.05\n"
             "delta_p = 0.05\n"
             "seed = 9\n";
    }
    const std::string base = "worst --theta_deg 0 --config \"" + cfg.string() + "\"";
    const RunResult from_file = run_cli(base);
    CHECK(from_file.code == 0);
    CHECK(contains(from_file.out, "n_antennas        : 8"));

    const RunResult overridden = run_cli(base + " --n_antennas 4");
    CHECK(overridden.code == 0);
    CHECK(contains(overridden.out, "n_antennas        : 4"));
}

TEST_CASE("unknown config keys are rejected") {
    const fs::path cfg = scratch_dir() / "bad.cfg";
    {
        std::ofstream f(cfg);
        f << "n_antennas = 8\nwarp_factor = 9\n";
    }
    const RunResult r = run_cli("worst --config \"" + cfg.string() + "\"");
    CHECK(r.code == 1);
}

TEST_CASE("worst report counts the degenerate optimal corners") {
    const RunResult r = run_cli(
        "worst --n_antennas 4 --delta_g 0.1 --alpha_g 0.05 --delta_p 0.05 --theta_deg 0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "optimal sign patterns: 6 (expected C(N, N/2) = 6)"));
    CHECK(contains(r.out, "argmin balanced : yes"));
    CHECK(contains(r.out, "loss_db"));
}

TEST_CASE("average report carries the agreement z score") {
    const RunResult r = run_cli("average --theta_deg 45 --mc_samples 4000 --threads 2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "z_score"));
    CHECK(contains(r.out, "mc_samples        : 4000"));
}

TEST_CASE("selfcheck passes end to end") {
    const RunResult r = run_cli("selfcheck --seed 7 --threads 4");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "4/4 checks passed"));
    CHECK_FALSE(contains(r.out, "[FAIL]"));
}

TEST_CASE("sweep output is byte-identical across thread counts") {
    const fs::path a = scratch_dir() / "sweep_t1.csv";
    const fs::path b = scratch_dir() / "sweep_t8.csv";
    const std::string common =
        "sweep --n_antennas 4 --theta_step_deg 45 --mc_samples 2000 "
        "--pso_particles 16 --pso_iterations 50 --pso_restarts 6 --seed 5 ";
    CHECK(run_cli(common + "--threads 1 --out \"" + a.string() + "\"").code == 0);
    CHECK(run_cli(common + "--threads 8 --out \"" + b.string() + "\"").code == 0);

    const std::string text_a = slurp(a);
    REQUIRE_FALSE(text_a.empty());
    CHECK(text_a == slurp(b));
    CHECK(contains(text_a,
                   "theta_deg,worst_theory_db,worst_search_db,avg_theory_db,avg_mc_db,"
                   "avg_mc_stderr_linear\n"));
    CHECK(text_a.back() == '\n');
}

TEST_CASE("surface csv reproduces the analytic broadside values") {
    const fs::path out = scratch_dir() / "surface.csv";
    const RunResult r = run_cli(
        "surface --n_antennas 4 --delta_g 0.1 --alpha_g 0 --delta_p 0.05 "
        "--theta_start_deg 90 --theta_stop_deg 90 --out \"" + out.string() + "\"");
    CHECK(r.code == 0);

    // At broadside the correlation is sqrt(N) * rho: 1.8 at the gain floor,
    // 2 at full gain.
    const std::string text = slurp(out);
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "rho,theta_deg,correlation");
    bool saw_floor = false, saw_full = false;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string rho, theta, corr;
        std::getline(cells, rho, ',');
        std::getline(cells, theta, ',');
        std::getline(cells, corr, ',');
        if (rho == "0.9") {
            CHECK(std::abs(std::stod(corr) - 1.8) < 1e-9);
            saw_floor = true;
        }
        if (rho == "1") {
            CHECK(std::abs(std::stod(corr) - 2.0) < 1e-9);
            saw_full = true;
        }
    }
    CHECK(saw_floor);
    CHECK(saw_full);
}

TEST_CASE("reports write to files and unwritable paths exit 3") {
    const fs::path out = scratch_dir() / "worst.txt";
    CHECK(run_cli("worst --theta_deg 30 --out \"" + out.string() + "\"").code == 0);
    CHECK(contains(slurp(out), "worst-case SNR loss"));

    const RunResult bad =
        run_cli("worst --theta_deg 30 --out /no/such/directory/report.txt");
    CHECK(bad.code == 3);
}

TEST_CASE("sweep and surface default to csv files in the working directory") {
    const fs::path dir = scratch_dir() / "defaults";
    fs::create_directories(dir);
    const RunResult r = run_shell("cd \"" + dir.string() + "\" && \"" BEAMLOSS_CLI_PATH
                                  "\" sweep --n_antennas 2 --theta_start_deg 45 "
                                  "--theta_stop_deg 45 --mc_samples 256 "
                                  "--pso_particles 8 --pso_iterations 10 --pso_restarts 2");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "sweep.csv"));
}
