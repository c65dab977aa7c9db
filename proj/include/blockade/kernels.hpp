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

#include <complex>
#include <cstddef>

namespace blockade::kern {

using cx = std::complex<double>;

// Function table for the data-parallel inner loops of the dense complex
// algebra. Every entry has a scalar reference implementation and, on x86-64
// with AVX2+FMA, a vectorized one. The active table is picked once at
// startup from CPUID (override with BLOCKADE_KERNELS=scalar|avx2 or
// set_impl(), which the equivalence tests use).
struct KernelTable {
    const char* name;
    // y += alpha * x
    void (*caxpy)(std::size_t n, cx alpha, const cx* x, cx* y);
    // y += alpha * x, real alpha
    void (*raxpy)(std::size_t n, double alpha, const cx* x, cx* y);
    // x *= alpha
    void (*cscal)(std::size_t n, cx alpha, cx* x);
    // sum_i conj(x_i) * y_i
    cx (*cdotc)(std::size_t n, const cx* x, const cx* y);
    // y = A * x with A column-major (n_rows x n_cols, leading dimension lda)
    void (*cgemv)(std::size_t n_rows, std::size_t n_cols, const cx* a,
                  std::size_t lda, const cx* x, cx* y);
    // C += alpha * A * B, all column-major
    void (*cgemm_acc)(std::size_t m, std::size_t n, std::size_t k, cx alpha,
                      const cx* a, std::size_t lda, const cx* b,
                      std::size_t ldb, cx* c, std::size_t ldc);
    // max_i |x_i| (true modulus)
    double (*max_abs)(std::size_t n, const cx* x);
    // argmax_i (|Re x_i| + |Im x_i|); the cabs1 pivot criterion, shared by
    // all tables so pivoting is identical across implementations
    std::size_t (*pivot_index)(std::size_t n, const cx* x);
};

enum class Impl { Auto, Scalar, Avx2 };

const KernelTable& active();
// Returns false (and leaves the table unchanged) if the requested
// implementation is not supported on this CPU.
bool set_impl(Impl which);
const char* active_name();
bool cpu_has_avx2();

extern const KernelTable scalar_table;
#if defined(__x86_64__)
extern const KernelTable avx2_table;
#endif

} // namespace blockade::kern
