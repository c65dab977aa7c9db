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

// Scalar reference kernels. These define the semantics the SIMD variants
// are equivalence-tested against.

#include "blockade/kernels.hpp"

#include <cmath>

namespace blockade::kern {

namespace {

void caxpy_scalar(std::size_t n, cx alpha, const cx* x, cx* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void raxpy_scalar(std::size_t n, double alpha, const cx* x, cx* y) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += cx(alpha * x[i].real(), alpha * x[i].imag());
    }
}

void cscal_scalar(std::size_t n, cx alpha, cx* x) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

cx cdotc_scalar(std::size_t n, const cx* x, const cx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

void cgemv_scalar(std::size_t n_rows, std::size_t n_cols, const cx* a,
                  std::size_t lda, const cx* x, cx* y) {
    for (std::size_t i = 0; i < n_rows; ++i) y[i] = cx(0.0, 0.0);
    for (std::size_t j = 0; j < n_cols; ++j) {
        caxpy_scalar(n_rows, x[j], a + j * lda, y);
    }
}

void cgemm_acc_scalar(std::size_t m, std::size_t n, std::size_t k, cx alpha,
                      const cx* a, std::size_t lda, const cx* b,
                      std::size_t ldb, cx* c, std::size_t ldc) {
    for (std::size_t j = 0; j < n; ++j) {
        const cx* bcol = b + j * ldb;
        cx* ccol = c + j * ldc;
        for (std::size_t l = 0; l < k; ++l) {
            const cx scale = alpha * bcol[l];
            if (scale == cx(0.0, 0.0)) continue;
            caxpy_scalar(m, scale, a + l * lda, ccol);
        }
    }
}

double max_abs_scalar(std::size_t n, const cx* x) {
    double m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = x[i].real(), im = x[i].imag();
        const double a2 = r * r + im * im;
        if (a2 > m2) m2 = a2;
    }
    return std::sqrt(m2);
}

std::size_t pivot_index_scalar(std::size_t n, const cx* x) {
    std::size_t best = 0;
    double bm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(x[i].real()) + std::abs(x[i].imag());
        if (m > bm) {
            bm = m;
            best = i;
        }
    }
    return best;
}

} // namespace

const KernelTable scalar_table = {
    "scalar",       caxpy_scalar, raxpy_scalar,   cscal_scalar,
    cdotc_scalar,   cgemv_scalar, cgemm_acc_scalar, max_abs_scalar,
    pivot_index_scalar,
};

} // namespace blockade::kern
