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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "blockade/model.hpp"

using namespace blockade;

namespace {

std::mt19937_64 rng(31415ULL);

cx element(const Matrix& bra, const Matrix& op, const Matrix& ket) {
    const Matrix v = op * ket;
    cx s(0.0, 0.0);
    for (std::size_t i = 0; i < bra.rows(); ++i)
        s += std::conj(bra(i, 0)) * v(i, 0);
    return s;
}

Matrix random_hermitian(std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix a(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = cx(u(rng), u(rng));
    Matrix h = a + adjoint(a);
    h *= cx(0.5, 0.0);
    return h;
}

ModelParams random_params() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ModelParams p;
    p.delta_a = 4.0 * (u(rng) - 0.5);
    p.delta_c = 4.0 * (u(rng) - 0.5);
    p.g0 = 2.0 * u(rng);
    p.phi_z = 2.0 * M_PI * u(rng);
    p.eta = u(rng);
    p.gamma = u(rng);
    p.n_max = 2;
    return p;
}

// vec under column stacking is just the column-major data array
Matrix apply_liouvillian(const Liouvillian& li, const Matrix& rho) {
    const std::size_t d = rho.rows();
    const Matrix v = matvec(li.matrix, [&] {
        Matrix col(d * d, 1);
        for (std::size_t i = 0; i < d * d; ++i) col(i, 0) = rho.data()[i];
        return col;
    }());
    Matrix out(d, d);
    for (std::size_t i = 0; i < d * d; ++i) out.data()[i] = v(i, 0);
    return out;
}

} // namespace

TEST_CASE("transition matrix elements of the driven Hamiltonian") {
    ModelParams p;
    p.g0 = 0.7;
    p.eta = 0.13;
    p.phi_z = M_PI;
    p.n_max = 3;
    const HilbertSpace s = make_space(p.n_max);
    const Operator h = build_hamiltonian(p);

    const Matrix gg0 = basis_ket(s, {QubitState::g, QubitState::g, 0});
    const Matrix gg1 = basis_ket(s, {QubitState::g, QubitState::g, 1});
    const Matrix gg2 = basis_ket(s, {QubitState::g, QubitState::g, 2});
    const Matrix ee0 = basis_ket(s, {QubitState::e, QubitState::e, 0});
    const Matrix plus0 = dicke_ket(s, +1, 0);
    const Matrix minus1 = dicke_ket(s, -1, 1);

    // drive feeds the symmetric Dicke ladder
    CHECK(element(plus0, h.data, gg0).real() ==
          doctest::Approx(std::sqrt(2.0) * p.eta).epsilon(1e-14));
    CHECK(std::abs(element(plus0, h.data, gg0).imag()) < 1e-15);

    // cascade couplings out of the doubly excited state (level-diagram strengths)
    CHECK(std::abs(element(minus1, h.data, ee0)) ==
          doctest::Approx(std::sqrt(2.0) * p.g0).epsilon(1e-14));
    CHECK(std::abs(element(gg2, h.data, minus1)) ==
          doctest::Approx(2.0 * p.g0).epsilon(1e-14));

    // anti-symmetric coupling decouples |+,0> from the one-photon space
    CHECK(element(gg1, h.data, plus0) == cx(0.0, 0.0));

    // the |+,n> ladder also stays decoupled from |-,n> exchange
    CHECK(std::abs(element(dicke_ket(s, -1, 1), h.data, plus0)) < 1e-15);
}

TEST_CASE("symmetric placement re-opens the one-photon channel") {
    ModelParams p;
    p.g0 = 0.7;
    p.eta = 0.13;
    p.phi_z = 0.0;
    p.n_max = 2;
    const HilbertSpace s = make_space(p.n_max);
    const Operator h = build_hamiltonian(p);
    const Matrix gg1 = basis_ket(s, {QubitState::g, QubitState::g, 1});
    const Matrix plus0 = dicke_ket(s, +1, 0);
    CHECK(element(gg1, h.data, plus0).real() ==
          doctest::Approx(std::sqrt(2.0) * p.g0).epsilon(1e-14));
}

TEST_CASE("all couplings zero gives the zero Hamiltonian") {
    ModelParams p;
    p.delta_a = 0.0;
    p.delta_c = 0.0;
    p.g0 = 0.0;
    p.eta = 0.0;
    p.n_max = 1;
    const Operator h = build_hamiltonian(p);
    CHECK(max_abs(h.data) == 0.0);
}

TEST_CASE("hamiltonian is hermitian for random parameters") {
    for (int trial = 0; trial < 20; ++trial) {
        const Operator h = build_hamiltonian(random_params());
        CHECK(hermiticity_defect(h.data) < 1e-12);
    }
}

TEST_CASE("individual-qubit coupling equals the collective Dicke form at phi_z=pi") {
    ModelParams p;
    p.g0 = 0.9;
    p.eta = 0.0;
    p.delta_a = 0.0;
    p.delta_c = 0.0;
    p.phi_z = M_PI;
    p.n_max = 3;
    const HilbertSpace s = make_space(p.n_max);
    const Operator h = build_hamiltonian(p); // only H_I survives

    // H_I = 2 g0 (a D_-^dag + a^dag D_-)/sqrt(2),
    // D_-^dag = (S_+^1 - S_+^2)/sqrt(2)
    const Operator dm_dag =
        cx(1.0 / std::sqrt(2.0)) * (qubit_raising(s, 1) - qubit_raising(s, 2));
    const Operator a = annihilation(s);
    const Operator hi_dicke =
        cx(2.0 * p.g0 / std::sqrt(2.0)) * (a * dm_dag + creation(s) * adjoint(dm_dag));
    CHECK(max_abs_diff(h.data, hi_dicke.data) < 1e-14);
}

TEST_CASE("liouvillian matches the direct master-equation right-hand side") {
    const ModelParams p = [] {
        ModelParams q;
        q.delta_a = 0.4;
        q.delta_c = -0.7;
        q.g0 = 1.1;
        q.phi_z = M_PI;
        q.eta = 0.3;
        q.gamma = 0.05;
        q.n_max = 2;
        return q;
    }();
    const Liouvillian li = build_liouvillian(p);
    const HilbertSpace s = li.space;

    for (int trial = 0; trial < 50; ++trial) {
        Matrix rho = random_hermitian(s.total_dim);
        const Matrix via_matrix = apply_liouvillian(li, rho);
        const Matrix direct = apply_master_rhs(p, Operator(s, rho)).data;
        CHECK(max_abs_diff(via_matrix, direct) < 1e-12);
        // Lindblad structure preserves hermiticity
        CHECK(hermiticity_defect(direct) < 1e-12);
    }
}

TEST_CASE("trace preservation: vec(I) annihilates the liouvillian from the left") {
    for (int trial = 0; trial < 5; ++trial) {
        const ModelParams p = random_params();
        const Liouvillian li = build_liouvillian(p);
        const std::size_t d = li.space.total_dim;
        double worst = 0.0;
        for (std::size_t col = 0; col < d * d; ++col) {
            cx s(0.0, 0.0);
            for (std::size_t i = 0; i < d; ++i)
                s += li.matrix(i * (d + 1), col);
            worst = std::max(worst, std::abs(s));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("bare decay rates carry the factor-of-two convention") {
    // qubit: d<P_e1>/dt = -2 gamma P_e1
    ModelParams p;
    p.g0 = 0.0;
    p.eta = 0.0;
    p.gamma = 0.37;
    p.n_max = 1;
    const HilbertSpace s = make_space(p.n_max);
    Matrix rho_q(s.total_dim, s.total_dim);
    rho_q(flat_index(s, {QubitState::e, QubitState::g, 0}),
          flat_index(s, {QubitState::e, QubitState::g, 0})) = 1.0;
    const Matrix rhs_q = apply_master_rhs(p, Operator(s, rho_q)).data;
    const Operator proj_e1 =
        qubit_raising(s, 1) * qubit_lowering(s, 1);
    CHECK(trace(proj_e1.data * rhs_q).real() ==
          doctest::Approx(-2.0 * p.gamma).epsilon(1e-13));

    // cavity: d<n>/dt = -2 kappa <n>
    ModelParams pc;
    pc.g0 = 0.0;
    pc.eta = 0.0;
    pc.gamma = 0.0;
    pc.n_max = 2;
    const HilbertSpace sc = make_space(pc.n_max);
    Matrix rho_c(sc.total_dim, sc.total_dim);
    rho_c(flat_index(sc, {QubitState::g, QubitState::g, 1}),
          flat_index(sc, {QubitState::g, QubitState::g, 1})) = 1.0;
    const Matrix rhs_c = apply_master_rhs(pc, Operator(sc, rho_c)).data;
    CHECK(trace(number_op(sc).data * rhs_c).real() ==
          doctest::Approx(-2.0 * pc.kappa).epsilon(1e-13));
}

TEST_CASE("liouvillian spectrum is dissipative") {
    for (int trial = 0; trial < 4; ++trial) {
        ModelParams p = random_params();
        p.n_max = 1;
        const Liouvillian li = build_liouvillian(p);
        const std::size_t n2 = li.matrix.rows();
        Eigen::MatrixXcd m(n2, n2);
        for (std::size_t j = 0; j < n2; ++j)
            for (std::size_t i = 0; i < n2; ++i) m(i, j) = li.matrix(i, j);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            CHECK(es.eigenvalues()(i).real() <= 1e-9);
    }
}

TEST_CASE("parameter validation") {
    ModelParams p;
    p.kappa = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.gamma = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.eta = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.n_max = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams{};
    p.phi_z = M_PI;
    CHECK(p.g2() == doctest::Approx(-p.g0));
    CHECK(std::cos(M_PI) == -1.0); // the exact decoupling relies on this
}
