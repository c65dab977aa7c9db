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

#include <stdexcept>
#include <string>
#include <vector>

#include "blockade/model.hpp"
#include "blockade/observables.hpp"

namespace blockade {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// L has a (numerically) degenerate null space; no unique steady state.
struct NonUniqueSteadyState : SolverError {
    using SolverError::SolverError;
};
// Trace drifted beyond tolerance even after the one allowed step halving.
struct StepUnstable : SolverError {
    using SolverError::SolverError;
};
// Truncation doubling hit the cap without the observables settling.
struct NoConvergence : SolverError {
    using SolverError::SolverError;
};

struct SteadyStateResult {
    Operator rho;
    double residual = 0.0;          // max-norm of L vec(rho)
    double positivity_defect = 0.0; // max(0, -lambda_min(rho))
};

// Solves L vec(rho) = 0 with tr(rho) = 1 by replacing the first row of L
// with the vectorized trace constraint and LU-solving; falls back to the
// smallest-singular-vector of L if that system is numerically singular.
SteadyStateResult steady_state(const Liouvillian& li);

struct Trajectory {
    std::vector<double> times;
    std::vector<Matrix> states;          // empty when not stored
    std::vector<SimResult> observables;  // one row per time
    std::vector<double> trace_defects;   // |tr rho - 1| per time
    double step = 0.0;                   // internal step actually used
};

struct EvolveOptions {
    // 0 = the default rule h = min(dt_out, 0.01 / max(kappa, gamma, eta, g0,
    // |delta_a|, |delta_c|, 1)). Tests override it to exercise instability.
    double step_override = 0.0;
    bool store_states = true;
    // The stage derivative can be taken either as the dense Liouvillian
    // times vec(rho) or matrix-free from the operator products; both routes
    // are equivalence-tested. Auto picks matrix-free once D^2 outgrows the
    // GEMV's footprint.
    enum class Rhs { Auto, DenseL, MatrixFree } rhs = Rhs::Auto;
};

// Fixed-step classical RK4 on vec(rho), recording observables every dt_out.
// If the trace drifts by more than 1e-6 between outputs the whole run is
// redone once with half the step; a second violation is fatal.
Trajectory evolve(const ModelParams& p, const Operator& rho0, double t_end,
                  double dt_out, const EvolveOptions& opts = {});

struct ConvergeOptions {
    int max_n_max = 64;
    double tol = 1e-6;
};

struct ConvergeLevel {
    int n_max = 0;
    SimResult observables;
    double max_delta = 0.0; // vs previous level; 0 for the first
};

struct ConvergeResult {
    int n_max = 0; // first level whose doubling moved nothing beyond tol
    std::vector<ConvergeLevel> history;
};

// Doubles n_max from p.n_max until every selected steady-state observable
// changes by less than tol between consecutive levels. Selector entries are
// observable names (see observable_names()); an empty selector means all.
ConvergeResult converge_truncation(const ModelParams& p,
                                   const std::vector<std::string>& selector,
                                   const ConvergeOptions& opts = {});

} // namespace blockade
