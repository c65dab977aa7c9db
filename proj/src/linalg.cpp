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

#include "blockade/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "blockade/kernels.hpp"

namespace blockade {

namespace {

void swap_rows(Matrix& a, std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

// Unblocked factorization of the panel A[kk:n, kk:kk+width), updating only
// columns inside the panel. Row swaps are applied to the full matrix.
void lu_panel(Matrix& a, std::size_t kk, std::size_t width, double pivot_floor,
              LuFactorization& f) {
    const std::size_t n = a.rows();
    const auto& k = kern::active();
    for (std::size_t col = kk; col < kk + width; ++col) {
        const std::size_t p = col + k.pivot_index(n - col, a.col(col) + col);
        f.perm[col] = p;
        swap_rows(a, col, p);
        cx piv = a(col, col);
        double mod = std::abs(piv);
        if (mod < pivot_floor) {
            piv = (mod == 0.0) ? cx(pivot_floor, 0.0) : piv * (pivot_floor / mod);
            a(col, col) = piv;
            mod = pivot_floor;
            ++f.clamped;
        }
        f.min_pivot = std::min(f.min_pivot, mod);
        f.max_pivot = std::max(f.max_pivot, mod);
        if (mod == 0.0) continue; // leaves a zero column; caller checks
        const std::size_t tail = n - col - 1;
        if (tail == 0) continue;
        k.cscal(tail, cx(1.0, 0.0) / piv, a.col(col) + col + 1);
        for (std::size_t j = col + 1; j < kk + width; ++j) {
            const cx m = a(col, j);
            if (m != cx(0.0, 0.0))
                k.caxpy(tail, -m, a.col(col) + col + 1, a.col(j) + col + 1);
        }
    }
}

LuFactorization lu_factor_impl(Matrix a, double pivot_floor) {
    if (a.rows() != a.cols()) throw std::invalid_argument("lu_factor: not square");
    const std::size_t n = a.rows();
    constexpr std::size_t kPanel = 32;
    LuFactorization f;
    f.perm.resize(n);
    f.min_pivot = n ? 1e308 : 0.0;
    const auto& k = kern::active();
    for (std::size_t kk = 0; kk < n; kk += kPanel) {
        const std::size_t width = std::min(kPanel, n - kk);
        lu_panel(a, kk, width, pivot_floor, f);
        const std::size_t rest = n - kk - width;
        if (rest == 0) continue;
        // U block row: solve L11 * U12 = A12 (unit lower triangular)
        for (std::size_t j = kk + width; j < n; ++j) {
            cx* colj = a.col(j);
            for (std::size_t col = kk; col < kk + width; ++col) {
                const cx m = colj[col];
                if (m != cx(0.0, 0.0))
                    k.caxpy(kk + width - col - 1, -m, a.col(col) + col + 1,
                            colj + col + 1);
            }
        }
        // trailing update A22 -= L21 * U12
        k.cgemm_acc(rest, rest, width, cx(-1.0, 0.0),
                    a.col(kk) + kk + width, n, a.col(kk + width) + kk, n,
                    a.col(kk + width) + kk + width, n);
    }
    f.lu = std::move(a);
    return f;
}

} // namespace

LuFactorization lu_factor(Matrix a) { return lu_factor_impl(std::move(a), 0.0); }

LuFactorization lu_factor_clamped(Matrix a, double pivot_floor) {
    return lu_factor_impl(std::move(a), pivot_floor);
}

void lu_solve_in_place(const LuFactorization& f, cx* b) {
    const Matrix& a = f.lu;
    const std::size_t n = a.rows();
    const auto& k = kern::active();
    for (std::size_t i = 0; i < n; ++i) std::swap(b[i], b[f.perm[i]]);
    // L y = Pb, unit lower
    for (std::size_t kk = 0; kk < n; ++kk) {
        const std::size_t tail = n - kk - 1;
        if (tail && b[kk] != cx(0.0, 0.0))
            k.caxpy(tail, -b[kk], a.col(kk) + kk + 1, b + kk + 1);
    }
    // U x = y
    for (std::size_t kk = n; kk-- > 0;) {
        b[kk] /= a(kk, kk);
        if (kk && b[kk] != cx(0.0, 0.0)) k.caxpy(kk, -b[kk], a.col(kk), b);
    }
}

void lu_solve_adjoint_in_place(const LuFactorization& f, cx* b) {
    // P A = L U  =>  A^dag x = b  <=>  U^dag y = b, L^dag z = y, x = P^T z
    const Matrix& a = f.lu;
    const std::size_t n = a.rows();
    const auto& k = kern::active();
    for (std::size_t i = 0; i < n; ++i) {
        const cx s = k.cdotc(i, a.col(i), b); // sum conj(U[j,i]) b[j], j<i
        b[i] = (b[i] - s) / std::conj(a(i, i));
    }
    for (std::size_t i = n; i-- > 0;) {
        const std::size_t tail = n - i - 1;
        if (tail) b[i] -= k.cdotc(tail, a.col(i) + i + 1, b + i + 1);
    }
    for (std::size_t i = n; i-- > 0;) std::swap(b[i], b[f.perm[i]]);
}

HermitianEigen eigh(const Matrix& a_in, bool with_vectors) {
    if (a_in.rows() != a_in.cols()) throw std::invalid_argument("eigh: not square");
    const std::size_t n = a_in.rows();
    Matrix a = a_in;
    Matrix v = with_vectors ? Matrix::identity(n) : Matrix();

    auto off_norm2 = [&]() {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < j; ++i) s += std::norm(a(i, j));
        return s;
    };

    const double scale = frobenius_norm(a);
    const double stop = (scale * 1e-15) * (scale * 1e-15);
    for (int sweep = 0; sweep < 60 && off_norm2() > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx apq = a(p, q);
                const double mod = std::abs(apq);
                if (mod <= scale * 1e-18) continue;
                const cx phase = apq / mod;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mod);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // J: [p,p]=c, [p,q]=s*phase, [q,p]=-s*conj(phase), [q,q]=c
                const cx jp = s * phase;
                for (std::size_t r = 0; r < n; ++r) {
                    const cx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - std::conj(jp) * arq;
                    a(r, q) = jp * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - jp * aqr;
                    a(q, r) = std::conj(jp) * apr + c * aqr;
                }
                a(p, q) = cx(0.0, 0.0);
                a(q, p) = cx(0.0, 0.0);
                a(p, p) = cx(a(p, p).real(), 0.0);
                a(q, q) = cx(a(q, q).real(), 0.0);
                if (with_vectors) {
                    for (std::size_t r = 0; r < n; ++r) {
                        const cx vrp = v(r, p), vrq = v(r, q);
                        v(r, p) = c * vrp - std::conj(jp) * vrq;
                        v(r, q) = jp * vrp + c * vrq;
                    }
                }
            }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(order[i], order[i]).real();
    if (with_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) out.vectors(r, i) = v(r, order[i]);
    }
    return out;
}

Matrix hermitian_sqrt(const Matrix& a) {
    const HermitianEigen e = eigh(a, true);
    const std::size_t n = a.rows();
    Matrix scaled(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = e.values[k] > 0.0 ? std::sqrt(e.values[k]) : 0.0;
        for (std::size_t r = 0; r < n; ++r) scaled(r, k) = lam * e.vectors(r, k);
    }
    return scaled * adjoint(e.vectors);
}

double trace_distance(const Matrix& a, const Matrix& b) {
    const HermitianEigen e = eigh(a - b, false);
    double s = 0.0;
    for (double lam : e.values) s += std::abs(lam);
    return 0.5 * s;
}

SingularPair smallest_singular_pair(const Matrix& a, int max_iter) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("smallest_singular_pair: not square");
    const std::size_t n = a.rows();
    SingularPair out;
    const double scale = max_abs(a);
    if (n == 0 || scale == 0.0) {
        out.v1 = Matrix(n, 1);
        if (n) out.v1(0, 0) = 1.0;
        out.converged = true;
        return out;
    }
    // The floor bounds the inverse-iteration amplification so the non-null
    // component of the second block column survives the Gram-Schmidt
    // cancellation.
    const LuFactorization f = lu_factor_clamped(a, scale * 1e-13);

    const auto& k = kern::active();
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix x(n, 2);
    for (std::size_t i = 0; i < x.size(); ++i) x.data()[i] = cx(u(rng), u(rng));

    // modified Gram-Schmidt, two passes
    auto orthonormalize = [&](Matrix& m) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t prev = 0; prev < j; ++prev) {
                    const cx proj = k.cdotc(n, m.col(prev), m.col(j));
                    k.caxpy(n, -proj, m.col(prev), m.col(j));
                }
            const double nrm = std::sqrt(k.cdotc(n, m.col(j), m.col(j)).real());
            if (nrm > 0.0) k.cscal(n, cx(1.0 / nrm, 0.0), m.col(j));
        }
    };
    orthonormalize(x);

    double s1 = -1.0, s2 = -1.0;
    Matrix w(2, 2);
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t j = 0; j < 2; ++j) {
            lu_solve_adjoint_in_place(f, x.col(j));
            lu_solve_in_place(f, x.col(j));
        }
        orthonormalize(x);
        // Rayleigh quotients of A^dag A on span(x)
        Matrix ax(n, 2);
        k.cgemv(n, n, a.data(), n, x.col(0), ax.col(0));
        k.cgemv(n, n, a.data(), n, x.col(1), ax.col(1));
        const cx m11 = k.cdotc(n, ax.col(0), ax.col(0));
        const cx m22 = k.cdotc(n, ax.col(1), ax.col(1));
        const cx m12 = k.cdotc(n, ax.col(0), ax.col(1));
        const double tr2 = 0.5 * (m11.real() + m22.real());
        const double det_disc = std::sqrt(std::max(
            0.0, 0.25 * (m11.real() - m22.real()) * (m11.real() - m22.real()) +
                     std::norm(m12)));
        const double mu1 = std::max(0.0, tr2 - det_disc);
        const double mu2 = std::max(0.0, tr2 + det_disc);
        const double n1 = std::sqrt(mu1), n2 = std::sqrt(mu2);
        const bool settled = s1 >= 0.0 &&
                             std::abs(n1 - s1) <= 1e-10 * scale + 1e-8 * n1 &&
                             std::abs(n2 - s2) <= 1e-10 * scale + 1e-8 * n2;
        s1 = n1;
        s2 = n2;
        // eigenvector of the 2x2 block for mu1, picking the branch that
        // avoids cancellation when m12 has collapsed to roundoff
        cx w0, w1;
        if (std::abs(mu1 - m11.real()) <= std::abs(mu1 - m22.real())) {
            w0 = cx(mu1 - m22.real(), 0.0);
            w1 = std::conj(m12);
        } else {
            w0 = m12;
            w1 = cx(mu1 - m11.real(), 0.0);
        }
        double wn = std::sqrt(std::norm(w0) + std::norm(w1));
        if (wn == 0.0) {
            w0 = 1.0;
            w1 = 0.0;
            wn = 1.0;
        }
        w(0, 0) = w0 / wn;
        w(1, 0) = w1 / wn;
        if (settled) {
            out.converged = true;
            break;
        }
    }
    out.sigma1 = s1;
    out.sigma2 = s2;
    out.v1 = Matrix(n, 1);
    k.caxpy(n, w(0, 0), x.col(0), out.v1.data());
    k.caxpy(n, w(1, 0), x.col(1), out.v1.data());
    const double nrm = std::sqrt(k.cdotc(n, out.v1.data(), out.v1.data()).real());
    if (nrm > 0.0) k.cscal(n, cx(1.0 / nrm, 0.0), out.v1.data());
    return out;
}

} // namespace blockade
