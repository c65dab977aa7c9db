// Copyright 2026 The cavity-blockade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the installed binary through its exit-code and file contract.
// The binary path arrives in BLOCKADE_CLI (set by ctest).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string output; // stdout + stderr
};

const char* cli_path() {
    const char* p = std::getenv("BLOCKADE_CLI");
    REQUIRE_MESSAGE(p != nullptr, "BLOCKADE_CLI must point at the binary");
    return p;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "blockade_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "out.txt";
    const std::string cmd =
        std::string(cli_path()) + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
    return r;
}

double parse_token(const std::string& output, const std::string& key) {
    const auto pos = output.find(key + "=");
    REQUIRE(pos != std::string::npos);
    return std::stod(output.substr(pos + key.size() + 1));
}

} // namespace

TEST_CASE("steady in the blockade regime reports xi < 1") {
    const RunResult r =
        run_cli("steady --gamma 0.01 --g0 1 --eta 0.05 --phi-z pi --n-max 6");
    CHECK(r.exit_code == 0);
    CHECK(parse_token(r.output, "xi") < 1.0);
    CHECK(parse_token(r.output, "g2_0") > 2.0);
}

TEST_CASE("steady without drive is the dark ground state") {
    const RunResult r = run_cli("steady --eta 0 --gamma 0.1 --n-max 2");
    CHECK(r.exit_code == 0);
    CHECK(parse_token(r.output, "p_ee") == doctest::Approx(0.0));
    CHECK(parse_token(r.output, "concurrence") == doctest::Approx(0.0));
    CHECK(parse_token(r.output, "n_photon") == doctest::Approx(0.0));
}

TEST_CASE("steady with decoupled qubits gives xi = 1") {
    const RunResult r =
        run_cli("steady --g0 0 --eta 0.05 --gamma 0.01 --n-max 2");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(parse_token(r.output, "xi") - 1.0) < 1e-6);
}

TEST_CASE("parameter errors exit with code 2") {
    CHECK(run_cli("steady --gamma -0.5").exit_code == 2);
    CHECK(run_cli("steady --n-max 0").exit_code == 2);
    CHECK(run_cli("steady --bogus-flag 1").exit_code == 2);
    CHECK(run_cli("").exit_code == 2); // missing subcommand
}

TEST_CASE("unknown figure name exits 2 and lists the valid names") {
    const RunResult r = run_cli("figure fig99");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("fig2") != std::string::npos);
    CHECK(r.output.find("fig5b") != std::string::npos);
}

TEST_CASE("config file and flags produce identical results, flags override") {
    const fs::path cfg = scratch_dir() / "params.cfg";
    {
        std::ofstream f(cfg);
        f << "gamma = 0.5\n"
          << "g0 = 0\n"
          << "eta = 0.05\n"
          << "n_max = 2\n";
    }
    const RunResult from_flags =
        run_cli("steady --g0 0 --eta 0.05 --gamma 0.01 --n-max 2");
    const RunResult overridden =
        run_cli("steady --config " + cfg.string() + " --gamma 0.01");
    CHECK(from_flags.exit_code == 0);
    CHECK(overridden.exit_code == 0);
    CHECK(from_flags.output == overridden.output);

    const RunResult from_cfg = run_cli("steady --config " + cfg.string());
    CHECK(from_cfg.exit_code == 0);
    CHECK(parse_token(from_cfg.output, "p_e1") ==
          doctest::Approx(0.05 * 0.05 / (0.5 * 0.5 + 2 * 0.05 * 0.05)));

    const fs::path bad = scratch_dir() / "bad.cfg";
    {
        std::ofstream f(bad);
        f << "gamm = 0.5\n";
    }
    CHECK(run_cli("steady --config " + bad.string()).exit_code == 2);
}

TEST_CASE("rho dump is written on request") {
    const fs::path dump = scratch_dir() / "rho.csv";
    const RunResult r =
        run_cli("steady --eta 0 --gamma 0.1 --n-max 1 --dump-rho " + dump.string());
    CHECK(r.exit_code == 0);
    std::ifstream f(dump);
    REQUIRE(f.good());
    std::string header, first;
    std::getline(f, header);
    std::getline(f, first);
    CHECK(header == "row,col,re,im");
    CHECK(first == "0,0,1,0"); // pure |gg,0><gg,0|
}

TEST_CASE("evolve writes a trajectory with a time column") {
    const fs::path out = scratch_dir() / "traj.csv";
    const RunResult r = run_cli(
        "evolve --gamma 0 --g0 0 --eta 0.3 --n-max 1 --t-end 1 --dt-out 0.5 -o " +
        out.string());
    CHECK(r.exit_code == 0);
    std::ifstream f(out);
    REQUIRE(f.good());
    std::string line;
    bool saw_header = false;
    int rows = 0;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            CHECK(line.find(",t,") != std::string::npos);
            saw_header = true;
        } else {
            ++rows;
        }
    }
    CHECK(rows == 3); // t = 0, 0.5, 1
}

TEST_CASE("custom sweep from a config file") {
    const fs::path cfg = scratch_dir() / "sweep.cfg";
    const fs::path out = scratch_dir() / "sweep.csv";
    {
        std::ofstream f(cfg);
        f << "gamma = 0.01\n"
          << "eta = 0.05\n"
          << "phi_z = pi\n"
          << "n_max = 3\n"
          << "axis1_param = g0_over_kappa\n"
          << "axis1_min = 0.1\n"
          << "axis1_max = 1\n"
          << "axis1_points = 3\n"
          << "axis1_scale = log\n";
    }
    const RunResult r = run_cli("sweep --config " + cfg.string() +
                                " --no-sentinel --workers 2 -o " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("rows=3") != std::string::npos);
    std::ifstream f(out);
    REQUIRE(f.good());
    std::string line;
    int rows = 0;
    while (std::getline(f, line))
        if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 4); // header + 3 grid points
}

TEST_CASE("converge audit prints its history") {
    const RunResult r =
        run_cli("converge --gamma 0.01 --g0 1 --eta 0.05 --n-max 1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("# converged n_max=") != std::string::npos);
    CHECK(r.output.find("max_delta") != std::string::npos);
}

TEST_CASE("kappa rescales the trajectory time axis") {
    const fs::path out = scratch_dir() / "traj_scaled.csv";
    const RunResult r = run_cli(
        "evolve --gamma 0 --g0 0 --eta 0.3 --n-max 1 --kappa 2 "
        "--t-end 1 --dt-out 0.5 -o " +
        out.string());
    CHECK(r.exit_code == 0);
    std::ifstream f(out);
    std::vector<std::string> times;
    std::string line;
    bool past_header = false;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!past_header) {
            past_header = true;
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        times.push_back(line.substr(c1 + 1, c2 - c1 - 1));
    }
    REQUIRE(times.size() == 3);
    CHECK(times[1] == "0.25"); // t = 0.5 internal, printed as t/kappa
    CHECK(times[2] == "0.5");
}

TEST_CASE("figure preset writes its table and snapshot") {
    const fs::path dir = scratch_dir() / "fig";
    const RunResult r =
        run_cli("figure fig5b --no-sentinel --output-dir " + dir.string());
    CHECK(r.exit_code == 0);
    REQUIRE(fs::exists(dir / "fig5b.csv"));
    REQUIRE(fs::exists(dir / "fig5b_rho_atom_peak.csv"));
    std::ifstream f(dir / "fig5b.csv");
    std::string line;
    int rows = 0;
    bool has_t = false;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("gamma_over_kappa", 0) == 0)
            has_t = line.find(",t,") != std::string::npos;
        else
            ++rows;
    }
    CHECK(has_t);
    CHECK(rows == 6001);
}

TEST_CASE("numerical failures exit with code 3") {
    // eta = 0 with gamma = 0 has a degenerate steady state
    const RunResult r =
        run_cli("steady --eta 0 --gamma 0 --g0 1 --phi-z pi --n-max 2");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("singular") != std::string::npos);
}
