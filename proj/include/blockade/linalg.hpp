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

#include <cstddef>
#include <vector>

#include "blockade/matrix.hpp"

namespace blockade {

// Packed LU with partial (row) pivoting: perm[k] is the row swapped into
// position k at step k. min_pivot/max_pivot are moduli of the U diagonal.
struct LuFactorization {
    Matrix lu;
    std::vector<std::size_t> perm;
    double min_pivot = 0.0;
    double max_pivot = 0.0;
    std::size_t clamped = 0; // pivots raised to the floor (clamped variant)

    bool near_singular(double rtol = 1e-13) const {
        return max_pivot == 0.0 || min_pivot <= rtol * max_pivot;
    }
};

LuFactorization lu_factor(Matrix a);
// Like lu_factor but raises |pivot| below pivot_floor to pivot_floor
// (preserving phase); used for inverse iteration on singular matrices.
LuFactorization lu_factor_clamped(Matrix a, double pivot_floor);

void lu_solve_in_place(const LuFactorization& f, cx* b);          // A x = b
void lu_solve_adjoint_in_place(const LuFactorization& f, cx* b);  // A^dag x = b

// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
// Eigenvalues ascending; vectors.col(k) is the eigenvector for values[k].
struct HermitianEigen {
    std::vector<double> values;
    Matrix vectors;
};
HermitianEigen eigh(const Matrix& a, bool with_vectors = true);

// Principal square root of a positive semidefinite Hermitian matrix;
// eigenvalues below zero (numerical noise) are clamped to zero.
Matrix hermitian_sqrt(const Matrix& a);

// (1/2) * sum |eig(a - b)| for Hermitian a, b.
double trace_distance(const Matrix& a, const Matrix& b);

// Two smallest singular values of a square matrix and the right singular
// vector of the smallest, by block inverse iteration on A^dag A.
struct SingularPair {
    double sigma1 = 0.0; // smallest
    double sigma2 = 0.0;
    Matrix v1;           // n x 1
    bool converged = false;
};
SingularPair smallest_singular_pair(const Matrix& a, int max_iter = 200);

} // namespace blockade
