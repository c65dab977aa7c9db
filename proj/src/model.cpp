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

#include "blockade/model.hpp"

#include <stdexcept>

namespace blockade {

void ModelParams::validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (gamma < 0.0) throw std::invalid_argument("gamma must be non-negative");
    if (eta < 0.0) throw std::invalid_argument("eta must be non-negative");
    if (g0 < 0.0) throw std::invalid_argument("g0 must be non-negative");
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (!std::isfinite(delta_a) || !std::isfinite(delta_c) ||
        !std::isfinite(phi_z) || !std::isfinite(g0) || !std::isfinite(eta) ||
        !std::isfinite(kappa) || !std::isfinite(gamma))
        throw std::invalid_argument("parameters must be finite");
}

Operator build_hamiltonian(const ModelParams& p) {
    p.validate();
    const HilbertSpace space = make_space(p.n_max);
    const Operator sm1 = qubit_lowering(space, 1);
    const Operator sm2 = qubit_lowering(space, 2);
    const Operator sp1 = adjoint(sm1);
    const Operator sp2 = adjoint(sm2);
    const Operator a = annihilation(space);
    const Operator ad = adjoint(a);

    Operator h =
        cx(0.5 * p.delta_a) * (qubit_sz(space, 1) + qubit_sz(space, 2)) +
        cx(p.delta_c) * number_op(space) +
        cx(p.g1()) * (ad * sm1 + a * sp1) + cx(p.g2()) * (ad * sm2 + a * sp2) +
        cx(p.eta) * (sm1 + sp1 + sm2 + sp2);

    if (hermiticity_defect(h.data) >= 1e-12)
        throw std::runtime_error("Hamiltonian failed hermiticity check");
    return h;
}

namespace {

// l += alpha * kron(a, b), accumulating in place (the D^2 x D^2 carrier is
// too large to keep spawning temporaries for).
void add_kron(Matrix& l, cx alpha, const Matrix& a, const Matrix& b) {
    const std::size_t br = b.rows(), bc = b.cols();
    for (std::size_t ja = 0; ja < a.cols(); ++ja)
        for (std::size_t ia = 0; ia < a.rows(); ++ia) {
            const cx av = alpha * a(ia, ja);
            if (av == cx(0.0, 0.0)) continue;
            for (std::size_t jb = 0; jb < bc; ++jb) {
                cx* dst = l.col(ja * bc + jb) + ia * br;
                const cx* src = b.col(jb);
                for (std::size_t ib = 0; ib < br; ++ib) dst[ib] += av * src[ib];
            }
        }
}

} // namespace

Liouvillian build_liouvillian(const ModelParams& p) {
    p.validate();
    const HilbertSpace space = make_space(p.n_max);
    const Operator h = build_hamiltonian(p);
    const std::size_t d = h.dim();
    const Matrix id = Matrix::identity(d);

    Matrix l(d * d, d * d);
    // -i (I (x) H - H^T (x) I)
    add_kron(l, cx(0.0, -1.0), id, h.data);
    add_kron(l, cx(0.0, 1.0), transpose(h.data), id);

    // sum_k [ 2 (conj C (x) C) - I (x) C^dag C - (C^dag C)^T (x) I ]
    auto add_dissipator = [&](const Matrix& c, double rate) {
        if (rate == 0.0) return;
        const Matrix cdc = adjoint(c) * c;
        add_kron(l, cx(2.0 * rate), conjugate(c), c);
        add_kron(l, cx(-rate), id, cdc);
        add_kron(l, cx(-rate), transpose(cdc), id);
    };
    add_dissipator(annihilation(space).data, p.kappa);
    add_dissipator(qubit_lowering(space, 1).data, p.gamma);
    add_dissipator(qubit_lowering(space, 2).data, p.gamma);

    return {space, std::move(l)};
}

Operator apply_master_rhs(const ModelParams& p, const Operator& rho) {
    p.validate();
    const HilbertSpace space = make_space(p.n_max);
    if (!(rho.space == space))
        throw std::invalid_argument("apply_master_rhs: rho space mismatch");
    const Operator h = build_hamiltonian(p);

    Matrix out = cx(0.0, -1.0) * (h.data * rho.data - rho.data * h.data);

    auto add_dissipator = [&](const Matrix& c, double rate) {
        if (rate == 0.0) return;
        const Matrix cd = adjoint(c);
        const Matrix cdc = cd * c;
        out += cx(2.0 * rate) * (c * rho.data * cd);
        out -= cx(rate) * (cdc * rho.data);
        out -= cx(rate) * (rho.data * cdc);
    };
    add_dissipator(annihilation(space).data, p.kappa);
    add_dissipator(qubit_lowering(space, 1).data, p.gamma);
    add_dissipator(qubit_lowering(space, 2).data, p.gamma);

    return {space, std::move(out)};
}

} // namespace blockade
