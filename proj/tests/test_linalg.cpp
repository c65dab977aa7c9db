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

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <random>

#include "blockade/kernels.hpp"
#include "blockade/linalg.hpp"

using namespace blockade;

namespace {

std::mt19937_64 rng(77001ULL);

Matrix random_matrix(std::size_t n, std::size_t m) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix a(n, m);
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] = cx(u(rng), u(rng));
    return a;
}

Matrix random_hermitian(std::size_t n) {
    Matrix a = random_matrix(n, n);
    Matrix h = a + adjoint(a);
    h *= cx(0.5, 0.0);
    return h;
}

Eigen::MatrixXcd to_eigen(const Matrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    return m;
}

} // namespace

TEST_CASE("lu solve matches Eigen on random systems") {
    for (auto impl : {kern::Impl::Scalar, kern::Impl::Avx2}) {
        if (!kern::set_impl(impl)) continue;
        for (std::size_t n : {1, 2, 5, 20, 60, 150}) {
            const Matrix a = random_matrix(n, n);
            const Matrix b = random_matrix(n, 1);
            const LuFactorization f = lu_factor(a);
            CHECK_FALSE(f.near_singular());
            Matrix x = b;
            lu_solve_in_place(f, x.data());

            const Eigen::MatrixXcd ae = to_eigen(a);
            const Eigen::VectorXcd xe =
                Eigen::PartialPivLU<Eigen::MatrixXcd>(ae).solve(
                    Eigen::VectorXcd(to_eigen(b)));
            double diff = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                diff = std::max(diff, std::abs(x(i, 0) - xe(i)));
                scale = std::max(scale, std::abs(xe(i)));
            }
            CHECK(diff <= 1e-10 * std::max(1.0, scale));

            // residual of our solution
            const Matrix r = matvec(a, x) - b;
            CHECK(max_abs(r) < 1e-11 * std::max(1.0, max_abs(b)) * double(n));
        }
    }
    kern::set_impl(kern::Impl::Auto);
}

TEST_CASE("lu adjoint solve") {
    const std::size_t n = 40;
    const Matrix a = random_matrix(n, n);
    const Matrix b = random_matrix(n, 1);
    const LuFactorization f = lu_factor(a);
    Matrix x = b;
    lu_solve_adjoint_in_place(f, x.data());
    const Matrix r = matvec(adjoint(a), x) - b;
    CHECK(max_abs(r) < 1e-11 * double(n));
}

TEST_CASE("eigh matches Eigen SelfAdjointEigenSolver") {
    for (std::size_t n : {1, 2, 4, 8, 25, 44}) {
        const Matrix h = random_hermitian(n);
        const HermitianEigen e = eigh(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h));
        for (std::size_t i = 0; i < n; ++i)
            CHECK(e.values[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-11));
        // reconstruction h = V diag(values) V^dag
        Matrix scaled = e.vectors;
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t r = 0; r < n; ++r)
                scaled(r, k) = e.values[k] * e.vectors(r, k);
        const Matrix rec = scaled * adjoint(e.vectors);
        CHECK(max_abs_diff(rec, h) < 1e-12 * std::max(1.0, max_abs(h)) * double(n));
        // orthonormality
        const Matrix vv = adjoint(e.vectors) * e.vectors;
        CHECK(max_abs_diff(vv, Matrix::identity(n)) < 1e-12 * double(n));
    }
}

TEST_CASE("hermitian_sqrt squares back") {
    for (std::size_t n : {2, 4, 10}) {
        Matrix a = random_matrix(n, n);
        Matrix psd = a * adjoint(a); // positive semidefinite
        const Matrix s = hermitian_sqrt(psd);
        CHECK(max_abs_diff(s * s, psd) < 1e-11 * std::max(1.0, max_abs(psd)) * double(n));
        CHECK(hermiticity_defect(s) < 1e-12 * double(n));
    }
}

TEST_CASE("trace_distance basics") {
    Matrix a(2, 2), b(2, 2);
    a(0, 0) = 1.0; // |0><0|
    b(1, 1) = 1.0; // |1><1|
    CHECK(trace_distance(a, b) == doctest::Approx(1.0));
    CHECK(trace_distance(a, a) == doctest::Approx(0.0));
    Matrix half = Matrix::identity(2);
    half *= cx(0.5, 0.0);
    CHECK(trace_distance(a, half) == doctest::Approx(0.5));
}

TEST_CASE("smallest_singular_pair matches Eigen JacobiSVD") {
    for (std::size_t n : {5, 20, 60}) {
        const Matrix a = random_matrix(n, n);
        const SingularPair sp = smallest_singular_pair(a);
        CHECK(sp.converged);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
        const auto& sv = svd.singularValues();
        CHECK(sp.sigma1 == doctest::Approx(sv(n - 1)).epsilon(1e-7));
        CHECK(sp.sigma2 == doctest::Approx(sv(n - 2)).epsilon(1e-7));
        // v1 points at the small end of the spectrum; with a clustered
        // random spectrum the Ritz vector is only a few percent tight
        const Matrix av = matvec(a, sp.v1);
        const double norm_av =
            std::sqrt(kern::active().cdotc(n, av.data(), av.data()).real());
        CHECK(norm_av >= sp.sigma1 * (1.0 - 1e-9));
        CHECK(norm_av <= sv(n - 2));
    }
}

TEST_CASE("singular vector is sharp for a well-separated spectrum") {
    const std::size_t n = 30;
    // A = Q1 diag(sigma) Q2^dag with sigma1 = 1e-3 far below sigma2 = 0.5
    Eigen::MatrixXcd g1 = Eigen::MatrixXcd::Random(n, n);
    Eigen::MatrixXcd g2 = Eigen::MatrixXcd::Random(n, n);
    const Eigen::MatrixXcd q1 =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(g1).householderQ();
    const Eigen::MatrixXcd q2 =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(g2).householderQ();
    Eigen::VectorXd sv(n);
    for (std::size_t i = 0; i < n; ++i) sv(i) = 0.5 + double(i);
    sv(0) = 1e-3; // spectrum {1e-3, 1.5, 2.5, ...}
    const Eigen::MatrixXcd ae = q1 * sv.asDiagonal() * q2.adjoint();
    Matrix a(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) a(i, j) = ae(i, j);

    const SingularPair sp = smallest_singular_pair(a);
    CHECK(sp.converged);
    CHECK(sp.sigma1 == doctest::Approx(1e-3).epsilon(1e-8));
    CHECK(sp.sigma2 == doctest::Approx(1.5).epsilon(1e-6));
    const Matrix av = matvec(a, sp.v1);
    const double norm_av =
        std::sqrt(kern::active().cdotc(n, av.data(), av.data()).real());
    CHECK(norm_av == doctest::Approx(1e-3).epsilon(1e-7));
}

TEST_CASE("smallest_singular_pair flags a two-dimensional null space") {
    const std::size_t n = 12;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n - 2; ++i)
        a(i, i) = cx(1.0 + 0.1 * double(i), 0.0);
    const SingularPair sp = smallest_singular_pair(a);
    CHECK(sp.sigma1 < 1e-10);
    CHECK(sp.sigma2 < 1e-10);
}

TEST_CASE("exactly singular matrix with a one-dimensional null space") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        std::mt19937_64 local(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const std::size_t n = 10;
        Matrix a(n, n);
        for (std::size_t i = 0; i < a.size(); ++i)
            a.data()[i] = cx(u(local), u(local));
        for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = a(i, 0);

        const SingularPair sp = smallest_singular_pair(a);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
        CHECK(sp.sigma1 < 1e-12);
        CHECK(sp.sigma2 ==
              doctest::Approx(svd.singularValues()(n - 2)).epsilon(0.01));
        const Matrix av = matvec(a, sp.v1);
        CHECK(max_abs(av) < 1e-10);
    }
}
