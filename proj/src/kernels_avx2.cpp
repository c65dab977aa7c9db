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

// AVX2+FMA kernels. Complex doubles are kept interleaved (re,im); one
// __m256d carries two complex numbers. A complex product alpha*x is
// fmaddsub(ar, x, ai*swap(x)), which yields (ar*xr - ai*xi, ar*xi + ai*xr)
// lane by lane.
//
// Pivot selection is shared with the scalar table so that LU factorizations
// pick identical pivots no matter which implementation is active.

#include "blockade/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

namespace blockade::kern {

namespace {

__attribute__((target("avx2,fma")))
void caxpy_avx2(std::size_t n, cx alpha, const cx* x, cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5);
        const __m256d t = _mm256_mul_pd(ai, xs);
        const __m256d p = _mm256_fmaddsub_pd(ar, xv, t);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, p));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cx(alpha.real() * xr - alpha.imag() * xi,
                   alpha.real() * xi + alpha.imag() * xr);
    }
}

__attribute__((target("avx2,fma")))
void raxpy_avx2(std::size_t n, double alpha, const cx* x, cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d av = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_fmadd_pd(av, xv, yv));
    }
    for (; i < n; ++i) {
        y[i] += cx(alpha * x[i].real(), alpha * x[i].imag());
    }
}

__attribute__((target("avx2,fma")))
void cscal_avx2(std::size_t n, cx alpha, cx* x) {
    double* xp = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5);
        const __m256d t = _mm256_mul_pd(ai, xs);
        _mm256_storeu_pd(xp + 2 * i, _mm256_fmaddsub_pd(ar, xv, t));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cx(alpha.real() * xr - alpha.imag() * xi,
                  alpha.real() * xi + alpha.imag() * xr);
    }
}

__attribute__((target("avx2,fma")))
cx cdotc_avx2(std::size_t n, const cx* x, const cx* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    // acc_re lanes hold xr*yr and xi*yi; acc_im lanes hold xi*yr and xr*yi.
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0x5);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        acc_im = _mm256_fmadd_pd(xs, yv, acc_im);
    }
    // im = sum over complex slots of (odd lane - even lane)
    const __m256d sign = _mm256_set_pd(0.0, -0.0, 0.0, -0.0);
    acc_im = _mm256_xor_pd(acc_im, sign);
    alignas(32) double re4[4], im4[4];
    _mm256_store_pd(re4, acc_re);
    _mm256_store_pd(im4, acc_im);
    double re = re4[0] + re4[1] + re4[2] + re4[3];
    double im = im4[0] + im4[1] + im4[2] + im4[3];
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

// y = A*x, accumulating four columns per pass to amortize the y traffic.
__attribute__((target("avx2,fma")))
void cgemv_avx2(std::size_t n_rows, std::size_t n_cols, const cx* a,
                std::size_t lda, const cx* x, cx* y) {
    for (std::size_t i = 0; i < n_rows; ++i) y[i] = cx(0.0, 0.0);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t j = 0;
    for (; j + 4 <= n_cols; j += 4) {
        const double* c0 = reinterpret_cast<const double*>(a + (j + 0) * lda);
        const double* c1 = reinterpret_cast<const double*>(a + (j + 1) * lda);
        const double* c2 = reinterpret_cast<const double*>(a + (j + 2) * lda);
        const double* c3 = reinterpret_cast<const double*>(a + (j + 3) * lda);
        const __m256d ar0 = _mm256_set1_pd(x[j + 0].real());
        const __m256d ai0 = _mm256_set1_pd(x[j + 0].imag());
        const __m256d ar1 = _mm256_set1_pd(x[j + 1].real());
        const __m256d ai1 = _mm256_set1_pd(x[j + 1].imag());
        const __m256d ar2 = _mm256_set1_pd(x[j + 2].real());
        const __m256d ai2 = _mm256_set1_pd(x[j + 2].imag());
        const __m256d ar3 = _mm256_set1_pd(x[j + 3].real());
        const __m256d ai3 = _mm256_set1_pd(x[j + 3].imag());
        std::size_t i = 0;
        for (; i + 2 <= n_rows; i += 2) {
            __m256d acc = _mm256_loadu_pd(yp + 2 * i);
            __m256d v, s;
            v = _mm256_loadu_pd(c0 + 2 * i);
            s = _mm256_permute_pd(v, 0x5);
            acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar0, v, _mm256_mul_pd(ai0, s)));
            v = _mm256_loadu_pd(c1 + 2 * i);
            s = _mm256_permute_pd(v, 0x5);
            acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar1, v, _mm256_mul_pd(ai1, s)));
            v = _mm256_loadu_pd(c2 + 2 * i);
            s = _mm256_permute_pd(v, 0x5);
            acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar2, v, _mm256_mul_pd(ai2, s)));
            v = _mm256_loadu_pd(c3 + 2 * i);
            s = _mm256_permute_pd(v, 0x5);
            acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar3, v, _mm256_mul_pd(ai3, s)));
            _mm256_storeu_pd(yp + 2 * i, acc);
        }
        for (; i < n_rows; ++i) {
            for (std::size_t jj = j; jj < j + 4; ++jj) {
                const cx aij = a[jj * lda + i];
                const double xr = aij.real(), xi = aij.imag();
                const double br = x[jj].real(), bi = x[jj].imag();
                y[i] += cx(xr * br - xi * bi, xr * bi + xi * br);
            }
        }
    }
    for (; j < n_cols; ++j) {
        caxpy_avx2(n_rows, x[j], a + j * lda, y);
    }
}

// stitch p -/+ q into the complex product, scale by alpha, accumulate into c
__attribute__((target("avx2,fma")))
inline void cgemm_tile_finish(__m256d p, __m256d q, __m256d ar, __m256d ai,
                              cx* c) {
    const __m256d prod = _mm256_addsub_pd(p, q);
    const __m256d swp = _mm256_permute_pd(prod, 0x5);
    const __m256d scaled = _mm256_fmaddsub_pd(ar, prod, _mm256_mul_pd(ai, swp));
    double* cp = reinterpret_cast<double*>(c);
    _mm256_storeu_pd(cp, _mm256_add_pd(_mm256_loadu_pd(cp), scaled));
}

// 4 complex rows x 2 columns register tile. Split accumulators keep the
// inner loop at two FMAs per (row-pair, column): p collects re*re/re*im
// lanes, q the im*im/im*re lanes; addsub stitches them into the complex
// product at the end.
__attribute__((target("avx2,fma")))
void cgemm_tile_4x2(std::size_t k, const cx* a, std::size_t lda, const cx* b0,
                    const cx* b1, cx alpha, cx* c0, cx* c1) {
    __m256d p00 = _mm256_setzero_pd(), q00 = _mm256_setzero_pd();
    __m256d p10 = _mm256_setzero_pd(), q10 = _mm256_setzero_pd();
    __m256d p01 = _mm256_setzero_pd(), q01 = _mm256_setzero_pd();
    __m256d p11 = _mm256_setzero_pd(), q11 = _mm256_setzero_pd();
    for (std::size_t l = 0; l < k; ++l) {
        const double* ap = reinterpret_cast<const double*>(a + l * lda);
        const __m256d a0 = _mm256_loadu_pd(ap);
        const __m256d a1 = _mm256_loadu_pd(ap + 4);
        const __m256d s0 = _mm256_permute_pd(a0, 0x5);
        const __m256d s1 = _mm256_permute_pd(a1, 0x5);
        const __m256d br0 = _mm256_set1_pd(b0[l].real());
        const __m256d bi0 = _mm256_set1_pd(b0[l].imag());
        const __m256d br1 = _mm256_set1_pd(b1[l].real());
        const __m256d bi1 = _mm256_set1_pd(b1[l].imag());
        p00 = _mm256_fmadd_pd(br0, a0, p00);
        q00 = _mm256_fmadd_pd(bi0, s0, q00);
        p10 = _mm256_fmadd_pd(br0, a1, p10);
        q10 = _mm256_fmadd_pd(bi0, s1, q10);
        p01 = _mm256_fmadd_pd(br1, a0, p01);
        q01 = _mm256_fmadd_pd(bi1, s0, q01);
        p11 = _mm256_fmadd_pd(br1, a1, p11);
        q11 = _mm256_fmadd_pd(bi1, s1, q11);
    }
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    cgemm_tile_finish(p00, q00, ar, ai, c0);
    cgemm_tile_finish(p10, q10, ar, ai, c0 + 2);
    cgemm_tile_finish(p01, q01, ar, ai, c1);
    cgemm_tile_finish(p11, q11, ar, ai, c1 + 2);
}

__attribute__((target("avx2,fma")))
void cgemm_acc_avx2(std::size_t m, std::size_t n, std::size_t k, cx alpha,
                    const cx* a, std::size_t lda, const cx* b, std::size_t ldb,
                    cx* c, std::size_t ldc) {
    if (k == 0) return;
    const std::size_t m4 = m & ~std::size_t(3);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
        const cx* b0 = b + j * ldb;
        const cx* b1 = b + (j + 1) * ldb;
        cx* c0 = c + j * ldc;
        cx* c1 = c + (j + 1) * ldc;
        for (std::size_t i = 0; i < m4; i += 4)
            cgemm_tile_4x2(k, a + i, lda, b0, b1, alpha, c0 + i, c1 + i);
        for (std::size_t i = m4; i < m; ++i) {
            cx acc0(0.0, 0.0), acc1(0.0, 0.0);
            for (std::size_t l = 0; l < k; ++l) {
                const cx av = a[l * lda + i];
                acc0 += av * b0[l];
                acc1 += av * b1[l];
            }
            c0[i] += alpha * acc0;
            c1[i] += alpha * acc1;
        }
    }
    if (j < n) {
        const cx* b0 = b + j * ldb;
        cx* c0 = c + j * ldc;
        for (std::size_t l = 0; l < k; ++l) {
            const cx scale = alpha * b0[l];
            if (scale == cx(0.0, 0.0)) continue;
            caxpy_avx2(m, scale, a + l * lda, c0);
        }
    }
}

__attribute__((target("avx2,fma")))
double max_abs_avx2(std::size_t n, const cx* x) {
    const double* xp = reinterpret_cast<const double*>(x);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(xp + 2 * i);
        const __m256d sq = _mm256_mul_pd(v, v);
        // pairwise re^2+im^2 per complex slot (duplicated lanes are fine)
        const __m256d s = _mm256_hadd_pd(sq, sq);
        m = _mm256_max_pd(m, s);
    }
    alignas(32) double m4[4];
    _mm256_store_pd(m4, m);
    double m2 = m4[0] > m4[2] ? m4[0] : m4[2];
    for (; i < n; ++i) {
        const double r = x[i].real(), im = x[i].imag();
        const double a2 = r * r + im * im;
        if (a2 > m2) m2 = a2;
    }
    return std::sqrt(m2);
}

// Same criterion and tie-breaking as the scalar version.
std::size_t pivot_index_plain(std::size_t n, const cx* x) {
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

const KernelTable avx2_table = {
    "avx2",       caxpy_avx2, raxpy_avx2,     cscal_avx2,
    cdotc_avx2,   cgemv_avx2, cgemm_acc_avx2, max_abs_avx2,
    pivot_index_plain,
};

} // namespace blockade::kern

#endif // __x86_64__
