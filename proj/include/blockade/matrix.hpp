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
#include <vector>

namespace blockade {

using cx = std::complex<double>;

// Dense complex matrix, column-major. The data array of a D x D matrix is
// exactly its column-stacked vectorization vec(.), which is the convention
// the Liouvillian acts on.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cx(0.0, 0.0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cx* data() { return data_.data(); }
    const cx* data() const { return data_.data(); }
    cx* col(std::size_t j) { return data_.data() + j * rows_; }
    const cx* col(std::size_t j) const { return data_.data() + j * rows_; }

    cx& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const cx& operator()(std::size_t i, std::size_t j) const {
        return data_[j * rows_ + i];
    }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(cx alpha);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cx alpha, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b); // matrix product

// c += alpha * a*b without allocating the product
void matmul_acc(Matrix& c, cx alpha, const Matrix& a, const Matrix& b);
Matrix matvec(const Matrix& a, const Matrix& x); // x is a column vector

Matrix adjoint(const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix conjugate(const Matrix& a);
Matrix kron(const Matrix& a, const Matrix& b);

cx trace(const Matrix& a);
double max_abs(const Matrix& a);                     // entrywise max modulus
double max_abs_diff(const Matrix& a, const Matrix& b);
double hermiticity_defect(const Matrix& a);          // max |A - A^dag|
double frobenius_norm(const Matrix& a);

} // namespace blockade
