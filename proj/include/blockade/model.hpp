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

#include <cmath>

#include "blockade/hilbert.hpp"

namespace blockade {

// All rates in units of the cavity decay kappa (kappa = 1 internally; the
// CLI renormalizes raw inputs). Qubit 1 sits at a field antinode (g1 = g0);
// qubit 2 is displaced by the phase phi_z, so g2 = g0*cos(phi_z). phi_z = pi
// gives the anti-symmetric coupling g1 = -g2.
struct ModelParams {
    double delta_a = 0.0; // qubit detuning
    double delta_c = 0.0; // cavity detuning
    double g0 = 1.0;      // base qubit-cavity coupling
    double phi_z = M_PI;  // placement phase of qubit 2 [rad]
    double eta = 0.05;    // drive strength (acts on the qubits only)
    double kappa = 1.0;   // cavity decay; the unit of rate
    double gamma = 0.01;  // qubit decay
    int n_max = 10;       // Fock truncation

    double g1() const { return g0; }
    double g2() const { return g0 * std::cos(phi_z); }

    void validate() const; // throws std::invalid_argument
    ModelParams with_n_max(int n) const {
        ModelParams p = *this;
        p.n_max = n;
        return p;
    }
};

// D^2 x D^2 superoperator under column-stacking: matrix * vec(rho) equals
// vec(-i[H, rho] + L_kappa rho + L_gamma rho). The dissipators carry the
// explicit factors of 2, so a lone cavity photon decays at rate 2*kappa and
// an excited qubit at 2*gamma.
struct Liouvillian {
    HilbertSpace space;
    Matrix matrix;
};

Operator build_hamiltonian(const ModelParams& p);
Liouvillian build_liouvillian(const ModelParams& p);

// Matrix-free right-hand side -i[H,rho] + L_kappa rho + L_gamma rho via
// direct products; the independent route the Liouvillian is tested against.
Operator apply_master_rhs(const ModelParams& p, const Operator& rho);

} // namespace blockade
