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

#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "blockade/sweep.hpp"

namespace blockade {

// Flat key-value config: one `key = value` per line, '#' comments. Unknown
// keys are a hard error (they are almost always typos in physics
// parameters).
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Keys shared between config files and CLI flags.
const std::vector<std::string>& param_keys(); // ModelParams fields
const std::vector<std::string>& sweep_keys(); // axes, mode, horizon, output

// Applies the param_keys subset of kv to p; values go through parse_phase
// for phi_z. Throws std::invalid_argument on malformed values.
void apply_params_config(const std::map<std::string, std::string>& kv,
                         ModelParams& p);

// Accepts plain radians or pi-forms: "pi", "-pi", "0.5pi", "2*pi".
double parse_phase(const std::string& text);

// 12 significant digits.
std::string format_value(double v);

// Sweep / trajectory table. Column order: axis values (then t for evolve
// rows), p_ee, p_e1, p_e2, xi, g2_0, concurrence, pop_plus, pop_minus,
// n_photon, n_max_used, residual, failed. Undefined observables print as
// empty fields. kappa rescales the time axis only.
void write_sweep_csv(std::ostream& out, const SweepResult& res, double kappa = 1.0);

// Single-point record with the same observable columns.
void write_point_csv(std::ostream& out, const ModelParams& p, const SimResult& r,
                     double residual);

// Flat (row, col, re, im) entries with |value| > threshold.
void write_rho_dump(std::ostream& out, const Matrix& rho, double threshold = 1e-14);

void write_contour_csv(std::ostream& out, const ContourSet& contour,
                       const std::string& axis1_name, const std::string& axis2_name);
void write_boundary_csv(std::ostream& out, const BoundaryReport& rep);
void write_converge_history(std::ostream& out, const ConvergeResult& res);

} // namespace blockade
