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

#include "blockade/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "blockade/version.hpp"

namespace blockade {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": " + text);
    }
    if (pos != text.size())
        throw std::invalid_argument("bad numeric value for " + key + ": " + text);
    return v;
}

bool known_key(const std::string& key) {
    const auto& pk = param_keys();
    if (std::find(pk.begin(), pk.end(), key) != pk.end()) return true;
    const auto& sk = sweep_keys();
    return std::find(sk.begin(), sk.end(), key) != sk.end();
}

} // namespace

const std::vector<std::string>& param_keys() {
    static const std::vector<std::string> keys = {
        "delta_a", "delta_c", "g0", "phi_z", "eta", "kappa", "gamma", "n_max"};
    return keys;
}

const std::vector<std::string>& sweep_keys() {
    static const std::vector<std::string> keys = {
        "mode",        "axis1_param", "axis1_min",  "axis1_max", "axis1_points",
        "axis1_scale", "axis2_param", "axis2_min",  "axis2_max", "axis2_points",
        "axis2_scale", "t_end",       "dt_out",     "output",    "workers"};
    return keys;
}

std::map<std::string, std::string> parse_config(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        if (!known_key(key))
            throw std::invalid_argument("unknown config key: " + key);
        if (kv.count(key))
            throw std::invalid_argument("duplicate config key: " + key);
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    return parse_config(in);
}

double parse_phase(const std::string& text) {
    std::string t = trim(text);
    bool pi = false;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        pi = true;
        t.erase(t.size() - 2);
        if (!t.empty() && t.back() == '*') t.pop_back();
        t = trim(t);
    }
    double factor = 1.0;
    if (!t.empty() && t != "+" && t != "-") {
        factor = parse_double("phi_z", t);
    } else if (t == "-") {
        factor = -1.0;
    }
    return pi ? factor * M_PI : factor;
}

void apply_params_config(const std::map<std::string, std::string>& kv,
                         ModelParams& p) {
    for (const auto& [key, value] : kv) {
        if (key == "delta_a") p.delta_a = parse_double(key, value);
        else if (key == "delta_c") p.delta_c = parse_double(key, value);
        else if (key == "g0") p.g0 = parse_double(key, value);
        else if (key == "phi_z") p.phi_z = parse_phase(value);
        else if (key == "eta") p.eta = parse_double(key, value);
        else if (key == "kappa") p.kappa = parse_double(key, value);
        else if (key == "gamma") p.gamma = parse_double(key, value);
        else if (key == "n_max") {
            const double v = parse_double(key, value);
            p.n_max = static_cast<int>(std::lround(v));
            if (std::abs(v - p.n_max) > 1e-9)
                throw std::invalid_argument("n_max must be an integer");
        }
    }
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string opt_field(const std::optional<double>& v) {
    return v ? format_value(*v) : std::string();
}

void write_params_echo(std::ostream& out, const ModelParams& p) {
    out << "# params: delta_a=" << format_value(p.delta_a)
        << " delta_c=" << format_value(p.delta_c) << " g0=" << format_value(p.g0)
        << " phi_z=" << format_value(p.phi_z) << " eta=" << format_value(p.eta)
        << " kappa=" << format_value(p.kappa) << " gamma=" << format_value(p.gamma)
        << " n_max=" << p.n_max << "\n";
}

void write_result_fields(std::ostream& out, const SimResult& r) {
    out << format_value(r.p_ee) << ',' << format_value(r.p_e1) << ','
        << format_value(r.p_e2) << ',' << opt_field(r.xi) << ','
        << opt_field(r.g2_0) << ',' << format_value(r.concurrence) << ','
        << format_value(r.pop_plus) << ',' << format_value(r.pop_minus) << ','
        << format_value(r.n_photon);
}

} // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& res, double kappa) {
    const SweepSpec& spec = res.spec;
    out << "# cavity-blockade " << BLOCKADE_VERSION << "\n";
    write_params_echo(out, spec.base);
    out << "# axis1: " << spec.axis1.name << " points=" << spec.axis1.values.size()
        << "\n";
    if (spec.axis2)
        out << "# axis2: " << spec.axis2->name
            << " points=" << spec.axis2->values.size() << "\n";
    for (const auto& [name, value] : spec.fixed)
        out << "# fixed: " << name << "=" << format_value(value) << "\n";
    out << "# mode: " << (spec.mode == SweepMode::Steady ? "steady" : "evolve")
        << "\n";
    if (spec.mode == SweepMode::Evolve && spec.evolve_horizon > 0.0)
        out << "# t_end=" << format_value(spec.evolve_horizon)
            << " dt_out=" << format_value(spec.dt_out) << "\n";
    if (kappa != 1.0)
        out << "# time axis rescaled by 1/kappa, kappa=" << format_value(kappa)
            << "\n";
    if (res.sentinel.performed)
        out << "# sentinel_check: " << (res.sentinel.passed ? "PASS" : "FLAGGED")
            << " max_drift=" << format_value(res.sentinel.max_drift) << "\n";

    const bool has_time = spec.mode == SweepMode::Evolve;
    out << spec.axis1.name;
    if (spec.axis2) out << ',' << spec.axis2->name;
    if (has_time) out << ",t";
    out << ",p_ee,p_e1,p_e2,xi,g2_0,concurrence,pop_plus,pop_minus,n_photon,"
           "n_max_used,residual,failed\n";

    for (const SweepRow& row : res.rows) {
        out << format_value(row.axis1_value);
        if (spec.axis2)
            out << ',' << (row.axis2_value ? format_value(*row.axis2_value) : "");
        if (has_time)
            out << ',' << (row.time ? format_value(*row.time / kappa) : "");
        out << ',';
        if (row.result) {
            write_result_fields(out, *row.result);
        } else {
            out << ",,,,,,,,";
        }
        out << ',' << row.n_max_used << ',' << opt_field(row.residual) << ','
            << (row.failed ? 1 : 0) << "\n";
    }
}

void write_point_csv(std::ostream& out, const ModelParams& p, const SimResult& r,
                     double residual) {
    out << "# cavity-blockade " << BLOCKADE_VERSION << "\n";
    write_params_echo(out, p);
    out << "p_ee,p_e1,p_e2,xi,g2_0,concurrence,pop_plus,pop_minus,n_photon,"
           "n_max_used,residual,failed\n";
    write_result_fields(out, r);
    out << ',' << p.n_max << ',' << format_value(residual) << ",0\n";
}

void write_rho_dump(std::ostream& out, const Matrix& rho, double threshold) {
    out << "row,col,re,im\n";
    for (std::size_t j = 0; j < rho.cols(); ++j)
        for (std::size_t i = 0; i < rho.rows(); ++i) {
            const cx v = rho(i, j);
            if (std::abs(v) > threshold)
                out << i << ',' << j << ',' << format_value(v.real()) << ','
                    << format_value(v.imag()) << "\n";
        }
}

void write_contour_csv(std::ostream& out, const ContourSet& contour,
                       const std::string& axis1_name,
                       const std::string& axis2_name) {
    out << "# contour: " << contour.label << "\n";
    out << axis1_name << ',' << axis2_name << "\n";
    for (const ContourPoint& p : contour.points)
        out << format_value(p.axis1) << ',' << format_value(p.axis2) << "\n";
}

void write_boundary_csv(std::ostream& out, const BoundaryReport& rep) {
    out << "# concurrence=0.45 contour vs analytic boundaries"
           " (eta values in units of gamma)\n";
    out << "# crossings_found=" << rep.crossings_found
        << " max_dev_cells=" << format_value(rep.max_dev_cells) << "\n";
    out << "g0,eta_cross_low,eta_cross_high,eta_analytic_low,eta_analytic_high,"
           "dev_cells_low,dev_cells_high\n";
    for (const BoundaryRow& r : rep.rows) {
        out << format_value(r.g0) << ',' << opt_field(r.eta_cross_low) << ','
            << opt_field(r.eta_cross_high) << ','
            << format_value(r.eta_analytic_low) << ','
            << format_value(r.eta_analytic_high) << ','
            << opt_field(r.dev_cells_low) << ',' << opt_field(r.dev_cells_high)
            << "\n";
    }
}

void write_converge_history(std::ostream& out, const ConvergeResult& res) {
    out << "# converged n_max=" << res.n_max << "\n";
    out << "n_max,p_ee,p_e1,p_e2,xi,g2_0,concurrence,pop_plus,pop_minus,"
           "n_photon,max_delta\n";
    for (const ConvergeLevel& lvl : res.history) {
        out << lvl.n_max << ',';
        write_result_fields(out, lvl.observables);
        out << ',' << format_value(lvl.max_delta) << "\n";
    }
}

} // namespace blockade
