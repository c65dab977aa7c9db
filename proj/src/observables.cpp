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

#include "blockade/observables.hpp"

#include <algorithm>
#include <cmath>

#include "blockade/linalg.hpp"

namespace blockade {

namespace {

constexpr double kProbSlack = 1e-9;
constexpr double kPeFloor = 1e-10;
constexpr double kPhotonFloor = 1e-12;

void check_probability(double p, const char* what) {
    if (p < -kProbSlack || p > 1.0 + kProbSlack)
        throw InvariantViolation(std::string(what) + " outside [0,1]");
}

// sigma_y (x) sigma_y in the (gg, ge, eg, ee) product basis.
Matrix spin_flip_matrix() {
    Matrix f(4, 4);
    f(0, 3) = -1.0;
    f(1, 2) = 1.0;
    f(2, 1) = 1.0;
    f(3, 0) = -1.0;
    return f;
}

} // namespace

Matrix partial_trace(const Operator& rho, const std::vector<int>& keep) {
    const auto& dims = rho.space.subsystem_dims;
    std::vector<int> traced;
    for (int s = 0; s < 3; ++s)
        if (std::find(keep.begin(), keep.end(), s) == keep.end())
            traced.push_back(s);
    if (keep.empty() || keep.size() > 3 ||
        !std::is_sorted(keep.begin(), keep.end()) ||
        std::adjacent_find(keep.begin(), keep.end()) != keep.end() ||
        keep.front() < 0 || keep.back() > 2)
        throw std::invalid_argument("partial_trace: invalid subsystem subset");

    const int strides[3] = {dims[1] * dims[2], dims[2], 1};
    int keep_dim = 1;
    for (int s : keep) keep_dim *= dims[s];
    int traced_dim = 1;
    for (int s : traced) traced_dim *= dims[s];

    // Flat offsets of every kept multi-index and every traced multi-index.
    std::vector<int> keep_offsets(keep_dim, 0);
    for (int idx = 0; idx < keep_dim; ++idx) {
        int rem = idx;
        for (std::size_t k = keep.size(); k-- > 0;) {
            const int s = keep[k];
            keep_offsets[idx] += (rem % dims[s]) * strides[s];
            rem /= dims[s];
        }
    }
    std::vector<int> traced_offsets(traced_dim, 0);
    for (int idx = 0; idx < traced_dim; ++idx) {
        int rem = idx;
        for (std::size_t k = traced.size(); k-- > 0;) {
            const int s = traced[k];
            traced_offsets[idx] += (rem % dims[s]) * strides[s];
            rem /= dims[s];
        }
    }

    Matrix out(keep_dim, keep_dim);
    for (int j = 0; j < keep_dim; ++j)
        for (int i = 0; i < keep_dim; ++i) {
            cx sum(0.0, 0.0);
            for (int t = 0; t < traced_dim; ++t)
                sum += rho.data(keep_offsets[i] + traced_offsets[t],
                                keep_offsets[j] + traced_offsets[t]);
            out(i, j) = sum;
        }
    return out;
}

BlockadeNumbers blockade_ratio(const Operator& rho) {
    BlockadeNumbers out;
    const Matrix atoms = partial_trace(rho, {0, 1});
    out.p_ee = atoms(3, 3).real();
    const Matrix q1 = partial_trace(rho, {0});
    const Matrix q2 = partial_trace(rho, {1});
    out.p_e1 = q1(1, 1).real();
    out.p_e2 = q2(1, 1).real();
    check_probability(out.p_ee, "p_ee");
    check_probability(out.p_e1, "p_e1");
    check_probability(out.p_e2, "p_e2");
    if (out.p_ee > std::min(out.p_e1, out.p_e2) + kProbSlack)
        throw InvariantViolation("p_ee exceeds min(p_e1, p_e2)");
    const double pe = 0.5 * (out.p_e1 + out.p_e2);
    if (pe >= kPeFloor) out.xi = out.p_ee / (pe * pe);
    return out;
}

std::optional<double> g2_zero(const Operator& rho) {
    const Matrix cav = partial_trace(rho, {2});
    double n1 = 0.0, n2 = 0.0;
    for (int n = 0; n < static_cast<int>(cav.rows()); ++n) {
        const double p = cav(n, n).real();
        n1 += n * p;
        n2 += n * (n - 1.0) * p;
    }
    if (n1 < kPhotonFloor) return std::nullopt;
    return n2 / (n1 * n1);
}

double photon_number(const Operator& rho) {
    const Matrix cav = partial_trace(rho, {2});
    double n1 = 0.0;
    for (int n = 0; n < static_cast<int>(cav.rows()); ++n)
        n1 += n * cav(n, n).real();
    return n1;
}

double concurrence(const Matrix& rho_atom) {
    if (rho_atom.rows() != 4 || rho_atom.cols() != 4)
        throw std::invalid_argument("concurrence expects a 4x4 matrix");
    const double tr = trace(rho_atom).real();
    if (std::abs(tr - 1.0) > 1e-8)
        throw std::invalid_argument("concurrence: trace differs from 1 beyond 1e-8");

    HermitianEigen e = eigh(rho_atom, true);
    if (e.values.front() < -kProbSlack)
        throw std::invalid_argument("concurrence: positivity defect beyond 1e-9");
    Matrix clamped(4, 4);
    Matrix root(4, 4);
    for (int k = 0; k < 4; ++k) {
        const double lam = std::max(0.0, e.values[k]);
        const double rl = std::sqrt(lam);
        for (int r = 0; r < 4; ++r) {
            clamped(r, k) = lam * e.vectors(r, k);
            root(r, k) = rl * e.vectors(r, k);
        }
    }
    const Matrix vh = adjoint(e.vectors);
    const Matrix rho_c = clamped * vh;
    const Matrix sqrt_rho = root * vh;

    const Matrix f = spin_flip_matrix();
    const Matrix rho_tilde = f * conjugate(rho_c) * f;
    const Matrix m = sqrt_rho * rho_tilde * sqrt_rho;

    HermitianEigen em = eigh(m, false);
    double lams[4];
    for (int k = 0; k < 4; ++k)
        lams[k] = std::sqrt(std::max(0.0, em.values[3 - k])); // descending
    const double c = lams[0] - lams[1] - lams[2] - lams[3];
    return std::clamp(c, 0.0, 1.0);
}

std::pair<double, double> dicke_populations(const Matrix& rho_atom) {
    if (rho_atom.rows() != 4 || rho_atom.cols() != 4)
        throw std::invalid_argument("dicke_populations expects a 4x4 matrix");
    // |eg> is index 2, |ge> is index 1
    const double diag = rho_atom(1, 1).real() + rho_atom(2, 2).real();
    const double cross = 2.0 * rho_atom(2, 1).real();
    return {0.5 * (diag + cross), 0.5 * (diag - cross)};
}

SimResult compute_observables(const Operator& rho) {
    SimResult r;
    const BlockadeNumbers b = blockade_ratio(rho);
    r.p_ee = b.p_ee;
    r.p_e1 = b.p_e1;
    r.p_e2 = b.p_e2;
    r.xi = b.xi;
    r.g2_0 = g2_zero(rho);
    r.n_photon = photon_number(rho);
    r.rho_atom = partial_trace(rho, {0, 1});
    r.concurrence = concurrence(r.rho_atom);
    const auto [plus, minus] = dicke_populations(r.rho_atom);
    r.pop_plus = plus;
    r.pop_minus = minus;
    check_probability(r.pop_plus, "pop_plus");
    check_probability(r.pop_minus, "pop_minus");
    return r;
}

const std::vector<std::string>& observable_names() {
    static const std::vector<std::string> names = {
        "p_ee",        "p_e1",     "p_e2",      "xi",      "g2_0",
        "concurrence", "pop_plus", "pop_minus", "n_photon"};
    return names;
}

std::optional<double> observable_by_name(const SimResult& r, std::string_view name) {
    if (name == "p_ee") return r.p_ee;
    if (name == "p_e1") return r.p_e1;
    if (name == "p_e2") return r.p_e2;
    if (name == "xi") return r.xi;
    if (name == "g2_0") return r.g2_0;
    if (name == "concurrence") return r.concurrence;
    if (name == "pop_plus") return r.pop_plus;
    if (name == "pop_minus") return r.pop_minus;
    if (name == "n_photon") return r.n_photon;
    throw std::invalid_argument("unknown observable: " + std::string(name));
}

} // namespace blockade
