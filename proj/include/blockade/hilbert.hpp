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

#include <array>
#include <vector>

#include "blockade/matrix.hpp"

namespace blockade {

// Composite space qubit1 (x) qubit2 (x) cavity mode truncated at n_max
// photons. Basis ordering within each qubit factor is (g, e); the flat
// index of |q1 q2, n> is (q1*2 + q2)*(n_max+1) + n.
struct HilbertSpace {
    std::array<int, 3> subsystem_dims{};
    int total_dim = 0;

    int fock_levels() const { return subsystem_dims[2]; }
    int n_max() const { return subsystem_dims[2] - 1; }
    bool operator==(const HilbertSpace&) const = default;
};

// n_max >= 1: with n_max = 0 the two-photon cascade out of the doubly
// excited state has nowhere to go.
HilbertSpace make_space(int n_max);

enum class QubitState { g = 0, e = 1 };

struct BasisLabel {
    QubitState qubit1 = QubitState::g;
    QubitState qubit2 = QubitState::g;
    int photons = 0;
};

int flat_index(const HilbertSpace& space, const BasisLabel& label);
BasisLabel basis_label(const HilbertSpace& space, int flat);

// Dense operator bound to its space; composing operators from different
// spaces is a hard error.
struct Operator {
    HilbertSpace space;
    Matrix data;

    Operator() = default;
    Operator(const HilbertSpace& s, Matrix m);

    std::size_t dim() const { return data.rows(); }
};

Operator identity_op(const HilbertSpace& space);
Operator annihilation(const HilbertSpace& space);      // a, identity on qubits
Operator creation(const HilbertSpace& space);          // a^dag
Operator number_op(const HilbertSpace& space);         // a^dag a
Operator qubit_lowering(const HilbertSpace& space, int which); // S_- on qubit 1 or 2
Operator qubit_raising(const HilbertSpace& space, int which);  // S_+
Operator qubit_sz(const HilbertSpace& space, int which);       // |e><e| - |g><g|

Operator compose(const Operator& a, const Operator& b);
Operator adjoint(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(cx alpha, Operator a);
Operator operator*(const Operator& a, const Operator& b);

// Column vector |q1 q2, n>.
Matrix basis_ket(const HilbertSpace& space, const BasisLabel& label);

// |+,n> and |-,n> with |+-> = (|eg> +- |ge>)/sqrt(2).
Matrix dicke_ket(const HilbertSpace& space, int sign, int photons);
struct DickeVectors {
    std::vector<Matrix> plus;  // indexed by photon number
    std::vector<Matrix> minus;
};
DickeVectors dicke_vectors(const HilbertSpace& space);

// Embed 2x2/2x2/cavity factors as q1 (x) q2 (x) cav.
Operator embed3(const HilbertSpace& space, const Matrix& q1, const Matrix& q2,
                const Matrix& cav);

void check_same_space(const Operator& a, const Operator& b);

} // namespace blockade
