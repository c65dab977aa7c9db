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

#include "blockade/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "blockade/kernels.hpp"

namespace blockade {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
}

} // namespace

Matrix& Matrix::operator+=(const Matrix& o) {
    check_same_shape(*this, o);
    kern::active().raxpy(size(), 1.0, o.data(), data());
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    check_same_shape(*this, o);
    kern::active().raxpy(size(), -1.0, o.data(), data());
    return *this;
}

Matrix& Matrix::operator*=(cx alpha) {
    kern::active().cscal(size(), alpha, data());
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) {
    a += b;
    return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
    a -= b;
    return a;
}

Matrix operator*(cx alpha, Matrix a) {
    a *= alpha;
    return a;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    kern::active().cgemm_acc(a.rows(), b.cols(), a.cols(), cx(1.0, 0.0),
                             a.data(), a.rows(), b.data(), b.rows(), c.data(),
                             c.rows());
    return c;
}

void matmul_acc(Matrix& c, cx alpha, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols())
        throw std::invalid_argument("matmul_acc shape mismatch");
    kern::active().cgemm_acc(a.rows(), b.cols(), a.cols(), alpha, a.data(),
                             a.rows(), b.data(), b.rows(), c.data(), c.rows());
}

Matrix matvec(const Matrix& a, const Matrix& x) {
    if (x.cols() != 1 || a.cols() != x.rows())
        throw std::invalid_argument("matvec shape mismatch");
    Matrix y(a.rows(), 1);
    kern::active().cgemv(a.rows(), a.cols(), a.data(), a.rows(), x.data(), y.data());
    return y;
}

Matrix adjoint(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) r(j, i) = std::conj(a(i, j));
    return r;
}

Matrix transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) r(j, i) = a(i, j);
    return r;
}

Matrix conjugate(const Matrix& a) {
    Matrix r(a.rows(), a.cols());
    const cx* src = a.data();
    cx* dst = r.data();
    for (std::size_t i = 0; i < a.size(); ++i) dst[i] = std::conj(src[i]);
    return r;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ja = 0; ja < a.cols(); ++ja)
        for (std::size_t ia = 0; ia < a.rows(); ++ia) {
            const cx av = a(ia, ja);
            if (av == cx(0.0, 0.0)) continue;
            for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                cx* dst = r.col(ja * b.cols() + jb) + ia * b.rows();
                const cx* src = b.col(jb);
                for (std::size_t ib = 0; ib < b.rows(); ++ib)
                    dst[ib] += av * src[ib];
            }
        }
    return r;
}

cx trace(const Matrix& a) {
    cx t(0.0, 0.0);
    const std::size_t n = a.rows() < a.cols() ? a.rows() : a.cols();
    for (std::size_t i = 0; i < n; ++i) t += a(i, i);
    return t;
}

double max_abs(const Matrix& a) {
    return kern::active().max_abs(a.size(), a.data());
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    double m = 0.0;
    const cx* pa = a.data();
    const cx* pb = b.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(pa[i] - pb[i]);
        if (d > m) m = d;
    }
    return m;
}

double hermiticity_defect(const Matrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("hermiticity_defect: matrix not square");
    double m = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i <= j; ++i) {
            const double d = std::abs(a(i, j) - std::conj(a(j, i)));
            if (d > m) m = d;
        }
    return m;
}

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    const cx* p = a.data();
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(p[i]);
    return std::sqrt(s);
}

} // namespace blockade
