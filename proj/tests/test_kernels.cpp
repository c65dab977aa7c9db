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

#include <random>
#include <vector>

#include "blockade/kernels.hpp"

using blockade::kern::cx;

namespace {

std::mt19937_64 rng(20260808ULL);

std::vector<cx> random_vec(std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cx> v(n);
    for (auto& z : v) z = cx(u(rng), u(rng));
    return v;
}

// plain long-double accumulation oracle
cx naive_dotc(const std::vector<cx>& x, const std::vector<cx>& y) {
    long double re = 0, im = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const cx p = std::conj(x[i]) * y[i];
        re += p.real();
        im += p.imag();
    }
    return {double(re), double(im)};
}

std::vector<cx> naive_gemv(std::size_t rows, std::size_t cols,
                           const std::vector<cx>& a, const std::vector<cx>& x) {
    std::vector<cx> y(rows, cx(0, 0));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) y[i] += a[j * rows + i] * x[j];
    return y;
}

double rel_err(cx a, cx b) {
    const double scale = std::max(1.0, std::abs(b));
    return std::abs(a - b) / scale;
}

const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 5, 8, 13, 17, 64, 100, 401};

} // namespace

TEST_CASE("scalar kernels match naive oracles") {
    REQUIRE(blockade::kern::set_impl(blockade::kern::Impl::Scalar));
    const auto& k = blockade::kern::active();

    for (std::size_t n : kSizes) {
        auto x = random_vec(n);
        auto y = random_vec(n);
        const cx alpha(0.37, -1.21);

        auto y_ref = y;
        for (std::size_t i = 0; i < n; ++i) y_ref[i] += alpha * x[i];
        auto y_got = y;
        k.caxpy(n, alpha, x.data(), y_got.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(y_got[i], y_ref[i]) < 1e-14);

        const cx dot = k.cdotc(n, x.data(), y.data());
        CHECK(rel_err(dot, naive_dotc(x, y)) < 1e-13);

        if (n > 0) {
            double m = 0;
            for (auto& z : x) m = std::max(m, std::abs(z));
            CHECK(k.max_abs(n, x.data()) == doctest::Approx(m).epsilon(1e-14));
        }
    }
}

TEST_CASE("scalar gemv matches naive") {
    REQUIRE(blockade::kern::set_impl(blockade::kern::Impl::Scalar));
    const auto& k = blockade::kern::active();
    for (std::size_t rows : {1, 2, 7, 16, 33})
        for (std::size_t cols : {1, 3, 8, 21}) {
            auto a = random_vec(rows * cols);
            auto x = random_vec(cols);
            std::vector<cx> y(rows);
            k.cgemv(rows, cols, a.data(), rows, x.data(), y.data());
            const auto ref = naive_gemv(rows, cols, a, x);
            for (std::size_t i = 0; i < rows; ++i)
                CHECK(rel_err(y[i], ref[i]) < 1e-13);
        }
}

TEST_CASE("avx2 kernels agree with scalar kernels" *
          doctest::skip(!blockade::kern::cpu_has_avx2())) {
    using blockade::kern::avx2_table;
    using blockade::kern::scalar_table;

    for (std::size_t n : kSizes) {
        auto x = random_vec(n);
        auto y0 = random_vec(n);
        const cx alpha(-0.83, 0.44);

        auto ya = y0, yb = y0;
        scalar_table.caxpy(n, alpha, x.data(), ya.data());
        avx2_table.caxpy(n, alpha, x.data(), yb.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(yb[i], ya[i]) < 1e-14);

        ya = y0;
        yb = y0;
        scalar_table.raxpy(n, 1.7, x.data(), ya.data());
        avx2_table.raxpy(n, 1.7, x.data(), yb.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(yb[i], ya[i]) < 1e-14);

        ya = x;
        yb = x;
        scalar_table.cscal(n, alpha, ya.data());
        avx2_table.cscal(n, alpha, yb.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(rel_err(yb[i], ya[i]) < 1e-14);

        const cx da = scalar_table.cdotc(n, x.data(), y0.data());
        const cx db = avx2_table.cdotc(n, x.data(), y0.data());
        CHECK(rel_err(db, da) < 1e-13);

        if (n > 0) {
            CHECK(avx2_table.max_abs(n, x.data()) ==
                  doctest::Approx(scalar_table.max_abs(n, x.data())).epsilon(1e-14));
            CHECK(avx2_table.pivot_index(n, x.data()) ==
                  scalar_table.pivot_index(n, x.data()));
        }
    }
}

TEST_CASE("avx2 gemv agrees with scalar gemv" *
          doctest::skip(!blockade::kern::cpu_has_avx2())) {
    using blockade::kern::avx2_table;
    using blockade::kern::scalar_table;
    for (std::size_t rows : {1, 2, 5, 16, 31, 44, 128})
        for (std::size_t cols : {1, 2, 4, 5, 9, 44, 101}) {
            auto a = random_vec(rows * cols);
            auto x = random_vec(cols);
            std::vector<cx> ya(rows), yb(rows);
            scalar_table.cgemv(rows, cols, a.data(), rows, x.data(), ya.data());
            avx2_table.cgemv(rows, cols, a.data(), rows, x.data(), yb.data());
            double scale = 0.0;
            for (auto& v : ya) scale = std::max(scale, std::abs(v));
            for (std::size_t i = 0; i < rows; ++i)
                CHECK(std::abs(yb[i] - ya[i]) <=
                      1e-13 * std::max(1.0, scale) * double(cols));
        }
}

TEST_CASE("scalar gemm matches naive") {
    REQUIRE(blockade::kern::set_impl(blockade::kern::Impl::Scalar));
    const auto& k = blockade::kern::active();
    for (std::size_t m : {1, 3, 8, 17})
        for (std::size_t n : {1, 2, 5, 12})
            for (std::size_t kk : {1, 4, 9}) {
                auto a = random_vec(m * kk);
                auto b = random_vec(kk * n);
                auto c = random_vec(m * n);
                auto ref = c;
                const cx alpha(0.9, -0.2);
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t l = 0; l < kk; ++l)
                        for (std::size_t i = 0; i < m; ++i)
                            ref[j * m + i] += alpha * a[l * m + i] * b[j * kk + l];
                k.cgemm_acc(m, n, kk, alpha, a.data(), m, b.data(), kk, c.data(), m);
                for (std::size_t i = 0; i < m * n; ++i)
                    CHECK(rel_err(c[i], ref[i]) < 1e-13);
            }
}

TEST_CASE("avx2 gemm agrees with scalar gemm" *
          doctest::skip(!blockade::kern::cpu_has_avx2())) {
    using blockade::kern::avx2_table;
    using blockade::kern::scalar_table;
    for (std::size_t m : {1, 2, 4, 5, 11, 32, 45})
        for (std::size_t n : {1, 2, 3, 8, 21})
            for (std::size_t kk : {1, 2, 7, 33}) {
                auto a = random_vec(m * kk);
                auto b = random_vec(kk * n);
                auto c0 = random_vec(m * n);
                auto ca = c0, cb = c0;
                const cx alpha(-1.1, 0.6);
                scalar_table.cgemm_acc(m, n, kk, alpha, a.data(), m, b.data(), kk,
                                       ca.data(), m);
                avx2_table.cgemm_acc(m, n, kk, alpha, a.data(), m, b.data(), kk,
                                     cb.data(), m);
                for (std::size_t i = 0; i < m * n; ++i)
                    CHECK(std::abs(cb[i] - ca[i]) <
                          1e-13 * double(kk) * std::max(1.0, std::abs(ca[i])));
            }
}

TEST_CASE("gemm with leading dimensions larger than the tile") {
    for (auto impl : {blockade::kern::Impl::Scalar, blockade::kern::Impl::Avx2}) {
        if (!blockade::kern::set_impl(impl)) continue;
        const auto& k = blockade::kern::active();
        const std::size_t m = 6, n = 3, kk = 4, lda = 9, ldb = 7, ldc = 8;
        auto a = random_vec(lda * kk);
        auto b = random_vec(ldb * n);
        auto c = random_vec(ldc * n);
        auto ref = c;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < kk; ++l)
                for (std::size_t i = 0; i < m; ++i)
                    ref[j * ldc + i] += a[l * lda + i] * b[j * ldb + l];
        k.cgemm_acc(m, n, kk, cx(1.0, 0.0), a.data(), lda, b.data(), ldb,
                    c.data(), ldc);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < m; ++i)
                CHECK(rel_err(c[j * ldc + i], ref[j * ldc + i]) < 1e-13);
    }
    blockade::kern::set_impl(blockade::kern::Impl::Auto);
}

TEST_CASE("gemv with lda larger than rows") {
    for (auto impl : {blockade::kern::Impl::Scalar, blockade::kern::Impl::Avx2}) {
        if (!blockade::kern::set_impl(impl)) continue;
        const auto& k = blockade::kern::active();
        const std::size_t rows = 7, cols = 5, lda = 11;
        auto a = random_vec(lda * cols);
        auto x = random_vec(cols);
        std::vector<cx> y(rows);
        k.cgemv(rows, cols, a.data(), lda, x.data(), y.data());
        for (std::size_t i = 0; i < rows; ++i) {
            cx ref(0, 0);
            for (std::size_t j = 0; j < cols; ++j) ref += a[j * lda + i] * x[j];
            CHECK(rel_err(y[i], ref) < 1e-13);
        }
    }
    blockade::kern::set_impl(blockade::kern::Impl::Auto);
}
