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

#include "blockade/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace blockade {

namespace {

Matrix sigma_minus_2x2() {
    Matrix m(2, 2);
    m(0, 1) = 1.0; // |g><e|
    return m;
}

Matrix sigma_z_2x2() {
    Matrix m(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

Matrix cavity_annihilation(int levels) {
    Matrix m(levels, levels);
    for (int n = 1; n < levels; ++n) m(n - 1, n) = std::sqrt(double(n));
    return m;
}

void check_which(int which) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("qubit selector must be 1 or 2");
}

} // namespace

HilbertSpace make_space(int n_max) {
    if (n_max < 1)
        throw std::invalid_argument(
            "n_max must be at least 1 (the |gg,2> pathway needs n_max >= 2 to "
            "be resolved; n_max = 0 removes the one-photon space entirely)");
    HilbertSpace s;
    s.subsystem_dims = {2, 2, n_max + 1};
    s.total_dim = 4 * (n_max + 1);
    return s;
}

int flat_index(const HilbertSpace& space, const BasisLabel& label) {
    if (label.photons < 0 || label.photons >= space.fock_levels())
        throw std::invalid_argument("photon number outside truncation");
    const int q1 = static_cast<int>(label.qubit1);
    const int q2 = static_cast<int>(label.qubit2);
    return (q1 * 2 + q2) * space.fock_levels() + label.photons;
}

BasisLabel basis_label(const HilbertSpace& space, int flat) {
    if (flat < 0 || flat >= space.total_dim)
        throw std::invalid_argument("flat index out of range");
    BasisLabel l;
    l.photons = flat % space.fock_levels();
    const int q = flat / space.fock_levels();
    l.qubit2 = static_cast<QubitState>(q % 2);
    l.qubit1 = static_cast<QubitState>(q / 2);
    return l;
}

Operator::Operator(const HilbertSpace& s, Matrix m) : space(s), data(std::move(m)) {
    if (data.rows() != static_cast<std::size_t>(s.total_dim) ||
        data.cols() != static_cast<std::size_t>(s.total_dim))
        throw std::invalid_argument("operator shape does not match space");
}

Operator identity_op(const HilbertSpace& space) {
    return {space, Matrix::identity(space.total_dim)};
}

Operator embed3(const HilbertSpace& space, const Matrix& q1, const Matrix& q2,
                const Matrix& cav) {
    return {space, kron(kron(q1, q2), cav)};
}

Operator annihilation(const HilbertSpace& space) {
    const Matrix id2 = Matrix::identity(2);
    return embed3(space, id2, id2, cavity_annihilation(space.fock_levels()));
}

Operator creation(const HilbertSpace& space) { return adjoint(annihilation(space)); }

Operator number_op(const HilbertSpace& space) {
    Matrix n(space.fock_levels(), space.fock_levels());
    for (int k = 0; k < space.fock_levels(); ++k) n(k, k) = double(k);
    const Matrix id2 = Matrix::identity(2);
    return embed3(space, id2, id2, n);
}

Operator qubit_lowering(const HilbertSpace& space, int which) {
    check_which(which);
    const Matrix id2 = Matrix::identity(2);
    const Matrix idc = Matrix::identity(space.fock_levels());
    const Matrix sm = sigma_minus_2x2();
    return which == 1 ? embed3(space, sm, id2, idc) : embed3(space, id2, sm, idc);
}

Operator qubit_raising(const HilbertSpace& space, int which) {
    return adjoint(qubit_lowering(space, which));
}

Operator qubit_sz(const HilbertSpace& space, int which) {
    check_which(which);
    const Matrix id2 = Matrix::identity(2);
    const Matrix idc = Matrix::identity(space.fock_levels());
    const Matrix sz = sigma_z_2x2();
    return which == 1 ? embed3(space, sz, id2, idc) : embed3(space, id2, sz, idc);
}

void check_same_space(const Operator& a, const Operator& b) {
    if (!(a.space == b.space))
        throw std::invalid_argument("operators live on different spaces");
}

Operator compose(const Operator& a, const Operator& b) {
    check_same_space(a, b);
    return {a.space, a.data * b.data};
}

Operator adjoint(const Operator& a) { return {a.space, adjoint(a.data)}; }

Operator commutator(const Operator& a, const Operator& b) {
    check_same_space(a, b);
    return {a.space, a.data * b.data - b.data * a.data};
}

Operator operator+(Operator a, const Operator& b) {
    check_same_space(a, b);
    a.data += b.data;
    return a;
}

Operator operator-(Operator a, const Operator& b) {
    check_same_space(a, b);
    a.data -= b.data;
    return a;
}

Operator operator*(cx alpha, Operator a) {
    a.data *= alpha;
    return a;
}

Operator operator*(const Operator& a, const Operator& b) { return compose(a, b); }

Matrix basis_ket(const HilbertSpace& space, const BasisLabel& label) {
    Matrix v(space.total_dim, 1);
    v(flat_index(space, label), 0) = 1.0;
    return v;
}

Matrix dicke_ket(const HilbertSpace& space, int sign, int photons) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("dicke_ket: sign must be +1 or -1");
    const double r = 1.0 / std::sqrt(2.0);
    Matrix v(space.total_dim, 1);
    v(flat_index(space, {QubitState::e, QubitState::g, photons}), 0) = r;
    v(flat_index(space, {QubitState::g, QubitState::e, photons}), 0) =
        sign > 0 ? r : -r;
    return v;
}

DickeVectors dicke_vectors(const HilbertSpace& space) {
    DickeVectors d;
    for (int n = 0; n < space.fock_levels(); ++n) {
        d.plus.push_back(dicke_ket(space, +1, n));
        d.minus.push_back(dicke_ket(space, -1, n));
    }
    return d;
}

} // namespace blockade
