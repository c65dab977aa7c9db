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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/hilbert.hpp"

namespace blockade {

// Raised when a computed quantity violates its structural bounds (e.g. a
// probability far outside [0,1]); sweeps turn this into a flagged row.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Observable bundle at one parameter or time point. xi and g2_0 are absent
// (not zero) when their denominators are below the floor.
struct SimResult {
    double p_ee = 0.0;
    double p_e1 = 0.0;
    double p_e2 = 0.0;
    std::optional<double> xi;    // P_ee / P_e^2, P_e = (p_e1+p_e2)/2
    std::optional<double> g2_0;  // <adag adag a a> / <adag a>^2
    double concurrence = 0.0;
    double pop_plus = 0.0;       // <+|rho_atom|+>
    double pop_minus = 0.0;
    double n_photon = 0.0;
    Matrix rho_atom;             // 4x4 two-qubit reduced state
};

// Keep is a subset of {0: qubit1, 1: qubit2, 2: cavity}, ascending.
Matrix partial_trace(const Operator& rho, const std::vector<int>& keep);

struct BlockadeNumbers {
    double p_ee = 0.0, p_e1 = 0.0, p_e2 = 0.0;
    std::optional<double> xi;
};
BlockadeNumbers blockade_ratio(const Operator& rho);

std::optional<double> g2_zero(const Operator& rho);

// Wootters concurrence of a 4x4 two-qubit density matrix. Trace must be 1
// within 1e-8 and the positivity defect within 1e-9 (negative eigenvalues
// inside those bounds are clamped for the computation).
double concurrence(const Matrix& rho_atom);

std::pair<double, double> dicke_populations(const Matrix& rho_atom);

double photon_number(const Operator& rho);

SimResult compute_observables(const Operator& rho);

// CSV-facing observable accessors.
const std::vector<std::string>& observable_names();
std::optional<double> observable_by_name(const SimResult& r, std::string_view name);

} // namespace blockade
