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

// Command-line front end: single-point steady states, time evolution,
// bundled figure presets, custom sweeps from config files, and truncation
// convergence audits. Exit codes: 0 success, 2 usage/parameter error,
// 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "blockade/io.hpp"
#include "blockade/version.hpp"

namespace {

using namespace blockade;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct ParamFlags {
    std::string config;
    double delta_a = 0.0, delta_c = 0.0, g0 = 0.0, eta = 0.0, gamma = 0.0;
    double kappa = 1.0;
    std::string phi_z;
    int n_max = 0;

    // Registers the shared parameter flags on a subcommand.
    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config, "flat key = value config file");
        cmd->add_option("--delta-a", delta_a, "qubit detuning [kappa]");
        cmd->add_option("--delta-c", delta_c, "cavity detuning [kappa]");
        cmd->add_option("--g0", g0, "qubit-cavity coupling [kappa]");
        cmd->add_option("--phi-z", phi_z,
                        "placement phase of qubit 2 (radians or pi-forms like "
                        "'pi', '0.5pi')");
        cmd->add_option("--eta", eta, "drive strength [kappa]");
        cmd->add_option("--gamma", gamma, "qubit decay rate [kappa]");
        cmd->add_option("--kappa", kappa,
                        "cavity decay in external units; rates are interpreted "
                        "relative to it and output time axes rescale by 1/kappa");
        cmd->add_option("--n-max", n_max, "Fock truncation");
    }

    // Defaults, then config file, then explicit flags (flags win).
    ModelParams resolve(const CLI::App* cmd,
                        std::map<std::string, std::string>* config_out = nullptr) const {
        ModelParams p;
        std::map<std::string, std::string> kv;
        if (!config.empty()) {
            kv = parse_config_file(config);
            apply_params_config(kv, p);
        }
        if (config_out) *config_out = kv;
        if (cmd->count("--delta-a")) p.delta_a = delta_a;
        if (cmd->count("--delta-c")) p.delta_c = delta_c;
        if (cmd->count("--g0")) p.g0 = g0;
        if (cmd->count("--phi-z")) p.phi_z = parse_phase(phi_z);
        if (cmd->count("--eta")) p.eta = eta;
        if (cmd->count("--gamma")) p.gamma = gamma;
        if (cmd->count("--n-max")) p.n_max = n_max;
        // All rates are in units of kappa: normalize so kappa = 1 internally.
        p.kappa = 1.0;
        p.validate();
        return p;
    }

    double kappa_scale(const CLI::App* cmd,
                       const std::map<std::string, std::string>& kv) const {
        if (cmd->count("--kappa")) return kappa;
        auto it = kv.find("kappa");
        if (it != kv.end()) return std::stod(it->second);
        return 1.0;
    }
};

void print_point_summary(std::ostream& out, const SimResult& r, double residual) {
    out << "p_ee=" << format_value(r.p_ee) << " p_e1=" << format_value(r.p_e1)
        << " p_e2=" << format_value(r.p_e2)
        << " xi=" << (r.xi ? format_value(*r.xi) : "undefined")
        << " g2_0=" << (r.g2_0 ? format_value(*r.g2_0) : "undefined")
        << " concurrence=" << format_value(r.concurrence)
        << " pop_plus=" << format_value(r.pop_plus)
        << " pop_minus=" << format_value(r.pop_minus)
        << " n_photon=" << format_value(r.n_photon)
        << " residual=" << format_value(residual) << "\n";
}

Operator ground_state_for(const ModelParams& p) {
    const HilbertSpace space = make_space(p.n_max);
    Matrix rho(space.total_dim, space.total_dim);
    rho(0, 0) = 1.0;
    return {space, std::move(rho)};
}

int run_steady(const ParamFlags& flags, const CLI::App* cmd,
               const std::string& output, const std::string& dump_rho) {
    std::map<std::string, std::string> kv;
    const ModelParams p = flags.resolve(cmd, &kv);
    const SteadyStateResult ss = steady_state(build_liouvillian(p));
    const SimResult r = compute_observables(ss.rho);
    print_point_summary(std::cout, r, ss.residual);
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw std::invalid_argument("cannot write " + output);
        write_point_csv(f, p, r, ss.residual);
        std::cout << "wrote " << output << "\n";
    }
    if (!dump_rho.empty()) {
        std::ofstream f(dump_rho);
        if (!f) throw std::invalid_argument("cannot write " + dump_rho);
        write_rho_dump(f, ss.rho.data);
        std::cout << "wrote " << dump_rho << "\n";
    }
    return kExitOk;
}

int run_evolve(const ParamFlags& flags, const CLI::App* cmd, double t_end,
               double dt_out, const std::string& output) {
    std::map<std::string, std::string> kv;
    const ModelParams p = flags.resolve(cmd, &kv);
    const double kscale = flags.kappa_scale(cmd, kv);

    EvolveOptions eo;
    eo.store_states = false;
    const Trajectory tr = evolve(p, ground_state_for(p), t_end, dt_out, eo);

    SweepSpec spec;
    spec.base = p;
    spec.axis1 = {"gamma_over_kappa", {p.gamma}};
    spec.mode = SweepMode::Evolve;
    spec.evolve_horizon = t_end;
    spec.dt_out = dt_out;
    SweepResult res;
    res.spec = spec;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        SweepRow row;
        row.axis1_value = p.gamma;
        row.time = tr.times[k];
        row.result = tr.observables[k];
        row.residual = tr.trace_defects[k];
        row.n_max_used = p.n_max;
        res.rows.push_back(std::move(row));
    }

    double peak_pee = 0.0, peak_conc = 0.0, t_peak_conc = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        peak_pee = std::max(peak_pee, tr.observables[k].p_ee);
        if (tr.observables[k].concurrence > peak_conc) {
            peak_conc = tr.observables[k].concurrence;
            t_peak_conc = tr.times[k];
        }
    }
    std::cout << "steps=" << tr.times.size() - 1 << " h=" << format_value(tr.step)
              << " max_p_ee=" << format_value(peak_pee)
              << " max_concurrence=" << format_value(peak_conc)
              << " at t=" << format_value(t_peak_conc / kscale) << "\n";

    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw std::invalid_argument("cannot write " + output);
        write_sweep_csv(f, res, kscale);
        std::cout << "wrote " << output << "\n";
    } else {
        write_sweep_csv(std::cout, res, kscale);
    }
    return kExitOk;
}

int run_converge(const ParamFlags& flags, const CLI::App* cmd,
                 const std::string& observables, int max_n_max) {
    const ModelParams p = flags.resolve(cmd);
    std::vector<std::string> selector;
    std::stringstream ss(observables);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) selector.push_back(item);
    ConvergeOptions co;
    co.max_n_max = max_n_max;
    const ConvergeResult res = converge_truncation(p, selector, co);
    write_converge_history(std::cout, res);
    return kExitOk;
}

int run_custom_sweep(const ParamFlags& flags, const CLI::App* cmd, int workers,
                     bool no_sentinel, const std::string& output_flag) {
    std::map<std::string, std::string> kv;
    const ModelParams p = flags.resolve(cmd, &kv);
    const double kscale = flags.kappa_scale(cmd, kv);

    auto need = [&](const std::string& key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::invalid_argument("sweep config needs key: " + key);
        return it->second;
    };
    auto axis_from_config = [&](const std::string& prefix) -> AxisSpec {
        AxisSpec axis;
        axis.name = need(prefix + "_param");
        const double lo = std::stod(need(prefix + "_min"));
        const double hi = std::stod(need(prefix + "_max"));
        const int n = std::stoi(need(prefix + "_points"));
        std::string scale = "lin";
        if (auto it = kv.find(prefix + "_scale"); it != kv.end()) scale = it->second;
        if (scale == "log") axis.values = log_grid(lo, hi, n);
        else if (scale == "lin") axis.values = lin_grid(lo, hi, n);
        else throw std::invalid_argument(prefix + "_scale must be lin or log");
        return axis;
    };

    SweepSpec spec;
    spec.base = p;
    spec.axis1 = axis_from_config("axis1");
    if (kv.count("axis2_param")) spec.axis2 = axis_from_config("axis2");
    if (kv.count("mode") && kv.at("mode") == "evolve") {
        spec.mode = SweepMode::Evolve;
        spec.evolve_horizon = std::stod(need("t_end"));
        spec.dt_out = std::stod(need("dt_out"));
    }

    SweepOptions opts;
    opts.workers = workers;
    if (workers == 0 && kv.count("workers"))
        opts.workers = std::stoi(kv.at("workers"));
    opts.sentinel = !no_sentinel;
    const SweepResult res = run_sweep(spec, opts);

    std::string output = output_flag;
    if (output.empty() && kv.count("output")) output = kv.at("output");
    std::size_t failed = 0;
    for (const auto& row : res.rows) failed += row.failed ? 1 : 0;
    std::cout << "rows=" << res.rows.size() << " failed=" << failed;
    if (res.sentinel.performed)
        std::cout << " sentinel=" << (res.sentinel.passed ? "PASS" : "FLAGGED")
                  << " max_drift=" << format_value(res.sentinel.max_drift);
    std::cout << "\n";
    if (!output.empty()) {
        std::ofstream f(output);
        if (!f) throw std::invalid_argument("cannot write " + output);
        write_sweep_csv(f, res, kscale);
        std::cout << "wrote " << output << "\n";
    } else {
        write_sweep_csv(std::cout, res, kscale);
    }
    return kExitOk;
}

int run_figure_cmd(const std::string& name, const std::string& output_dir,
                   int workers, bool no_sentinel) {
    const auto& names = figure_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        std::ostringstream msg;
        msg << "unknown figure name: " << name << " (valid:";
        for (const auto& n : names) msg << ' ' << n;
        msg << ")";
        throw std::invalid_argument(msg.str());
    }
    SweepOptions opts;
    opts.workers = workers;
    opts.sentinel = !no_sentinel;
    const FigureResult fig = run_figure(name, opts);

    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    auto path_for = [&](const std::string& suffix) {
        std::string base = fig.name;
        for (auto& c : base)
            if (c == '-') c = '_';
        return (fs::path(output_dir) / (suffix.empty() ? base + ".csv"
                                                       : base + "_" + suffix + ".csv"))
            .string();
    };

    for (const auto& [tag, table] : fig.tables) {
        const std::string path = path_for(tag);
        std::ofstream f(path);
        if (!f) throw std::invalid_argument("cannot write " + path);
        write_sweep_csv(f, table);
        std::size_t failed = 0;
        for (const auto& row : table.rows) failed += row.failed ? 1 : 0;
        std::cout << "wrote " << path << " rows=" << table.rows.size()
                  << " failed=" << failed;
        if (table.sentinel.performed)
            std::cout << " sentinel="
                      << (table.sentinel.passed ? "PASS" : "FLAGGED")
                      << " max_drift=" << format_value(table.sentinel.max_drift);
        std::cout << "\n";
    }
    for (const auto& snap : fig.snapshots) {
        const std::string path = path_for(snap.label);
        std::ofstream f(path);
        write_rho_dump(f, snap.rho);
        std::cout << "wrote " << path << "\n";
    }
    for (const auto& contour : fig.contours) {
        const std::string path = path_for(contour.label);
        std::ofstream f(path);
        const auto& spec = fig.tables.front().second.spec;
        write_contour_csv(f, contour, spec.axis1.name,
                          spec.axis2 ? spec.axis2->name : "axis2");
        std::cout << "wrote " << path << " points=" << contour.points.size() << "\n";
    }
    if (fig.boundary) {
        const std::string path = path_for("boundary");
        std::ofstream f(path);
        write_boundary_csv(f, *fig.boundary);
        std::cout << "wrote " << path
                  << " crossings=" << fig.boundary->crossings_found
                  << " max_dev_cells=" << format_value(fig.boundary->max_dev_cells)
                  << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"driven two-qubit cavity QED simulator (rates in units of kappa)"};
    app.set_version_flag("--version", BLOCKADE_VERSION);
    app.require_subcommand(1);

    // steady
    auto* steady = app.add_subcommand("steady", "steady-state observables");
    ParamFlags steady_flags;
    steady_flags.attach(steady);
    std::string steady_output, steady_dump;
    steady->add_option("-o,--output", steady_output, "write a one-row CSV record");
    steady->add_option("--dump-rho", steady_dump,
                       "write the full density matrix (row,col,re,im)");

    // evolve
    auto* evolve_cmd = app.add_subcommand("evolve", "time evolution from |gg,0>");
    ParamFlags evolve_flags;
    evolve_flags.attach(evolve_cmd);
    double t_end = 10.0, dt_out = 0.1;
    std::string evolve_output;
    evolve_cmd->add_option("--t-end", t_end, "horizon [1/kappa]")->required();
    evolve_cmd->add_option("--dt-out", dt_out, "output interval [1/kappa]")
        ->required();
    evolve_cmd->add_option("-o,--output", evolve_output, "trajectory CSV path");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "custom sweep from a config file");
    ParamFlags sweep_flags;
    sweep_flags.attach(sweep_cmd);
    sweep_cmd->get_option("--config")->required();
    int sweep_workers = 0;
    bool sweep_no_sentinel = false;
    std::string sweep_output;
    sweep_cmd->add_option("--workers", sweep_workers,
                          "worker threads (default: all cores)");
    sweep_cmd->add_flag("--no-sentinel", sweep_no_sentinel,
                        "skip the doubled-truncation sentinel re-runs");
    sweep_cmd->add_option("-o,--output", sweep_output, "CSV path");

    // figure
    auto* figure_cmd =
        app.add_subcommand("figure", "bundled parameter-study presets");
    std::string figure_name, figure_dir = ".";
    int figure_workers = 0;
    bool figure_no_sentinel = false;
    figure_cmd->add_option("name", figure_name, "preset name (see 'figure --list')");
    bool figure_list = false;
    figure_cmd->add_flag("--list", figure_list, "list preset names");
    figure_cmd->add_option("--output-dir", figure_dir, "destination directory");
    figure_cmd->add_option("--workers", figure_workers, "worker threads");
    figure_cmd->add_flag("--no-sentinel", figure_no_sentinel,
                         "skip the doubled-truncation sentinel re-runs");

    // converge
    auto* converge_cmd =
        app.add_subcommand("converge", "Fock truncation convergence audit");
    ParamFlags converge_flags;
    converge_flags.attach(converge_cmd);
    std::string converge_obs = "p_ee,p_e1,xi,g2_0,concurrence,n_photon";
    int converge_cap = 64;
    converge_cmd->add_option("--observables", converge_obs,
                             "comma-separated observables to track");
    converge_cmd->add_option("--max-n-max", converge_cap, "doubling cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (steady->parsed())
            return run_steady(steady_flags, steady, steady_output, steady_dump);
        if (evolve_cmd->parsed())
            return run_evolve(evolve_flags, evolve_cmd, t_end, dt_out, evolve_output);
        if (sweep_cmd->parsed())
            return run_custom_sweep(sweep_flags, sweep_cmd, sweep_workers,
                                    sweep_no_sentinel, sweep_output);
        if (figure_cmd->parsed()) {
            if (figure_list) {
                for (const auto& n : figure_names()) std::cout << n << "\n";
                return kExitOk;
            }
            if (figure_name.empty())
                throw std::invalid_argument("figure: missing preset name");
            return run_figure_cmd(figure_name, figure_dir, figure_workers,
                                  figure_no_sentinel);
        }
        if (converge_cmd->parsed())
            return run_converge(converge_flags, converge_cmd, converge_obs,
                                converge_cap);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
