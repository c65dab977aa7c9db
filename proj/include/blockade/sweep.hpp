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

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockade/solvers.hpp"

namespace blockade {

// Grid axes address ModelParams fields directly or through the derived
// ratios used throughout: g0_over_kappa, gamma_over_kappa, eta_over_gamma,
// delta_over_kappa (sets both detunings), phi_z_over_pi.
struct AxisSpec {
    std::string name;
    std::vector<double> values;
};

enum class SweepMode { Steady, Evolve };

struct SweepSpec {
    ModelParams base;
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    // Assignments applied after the axes, same name set. eta_over_gamma is
    // resolved last so it can tie the drive to a swept gamma.
    std::vector<std::pair<std::string, double>> fixed;
    SweepMode mode = SweepMode::Steady;
    double evolve_horizon = 0.0; // mode == Evolve
    double dt_out = 0.0;
    std::vector<std::string> observables; // empty = all
    // Per-axis2-value truncation (presets probe this; the needed Fock depth
    // varies strongly along e.g. a gamma axis). Empty = base.n_max.
    std::vector<int> n_max_per_axis2;
};

struct SweepRow {
    double axis1_value = 0.0;
    std::optional<double> axis2_value;
    std::optional<double> time; // evolve mode
    std::optional<SimResult> result;
    int n_max_used = 0;
    std::optional<double> residual; // steady residual / trajectory trace defect
    bool failed = false;
    std::string error;
};

struct SentinelCheck {
    bool performed = false;
    bool passed = true;
    double max_drift = 0.0;
    std::vector<std::size_t> grid_indices;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    SentinelCheck sentinel;
};

ModelParams apply_axis(ModelParams p, const std::string& name, double value);
bool is_axis_name(const std::string& name);

std::vector<double> lin_grid(double lo, double hi, int n);
std::vector<double> log_grid(double lo, double hi, int n);

struct SweepOptions {
    int workers = 0;      // 0 = hardware concurrency
    bool sentinel = true; // re-run 5 grid points at 2*n_max
};

// Evaluates every grid point (row-major: axis1 outer, axis2 inner; for
// evolve mode each point expands into its time series). Point failures are
// flagged rows, never aborts. The row order is fixed by the grid, so the
// output is identical for any worker count.
SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& opts = {});

// Converges n_max over probe points (grid corners + center, capped) and
// returns a suitable truncation for the whole grid.
int probe_n_max(const SweepSpec& spec, int cap = 16);
// Same, but per axis2 value (probing the axis1 ends and midpoint).
std::vector<int> probe_n_max_per_axis2(const SweepSpec& spec, int cap = 16);
// Smallest truncation at which consecutive levels move every selected
// observable by < 5e-6; the building block of the probes above.
int ladder_n_max(const ModelParams& p, const std::vector<std::string>& names,
                 int cap = 16);

// --- figure presets ---------------------------------------------------

struct RhoSnapshot {
    std::string label;
    Matrix rho; // 4x4 two-qubit state
};

struct ContourPoint {
    double axis1 = 0.0;
    double axis2 = 0.0;
};

struct ContourSet {
    std::string label; // e.g. "xi_equals_1"
    std::vector<ContourPoint> points;
};

struct BoundaryRow {
    double g0 = 0.0;
    std::optional<double> eta_cross_low;   // concurrence rises through 0.45
    std::optional<double> eta_cross_high;  // concurrence falls through 0.45
    double eta_analytic_low = 0.0;         // sqrt(2) eta = gamma
    double eta_analytic_high = 0.0;        // g0^2 = 2 sqrt(2) eta kappa
    std::optional<double> dev_cells_low;   // deviation in grid cells
    std::optional<double> dev_cells_high;
};

struct BoundaryReport {
    std::vector<BoundaryRow> rows;
    double max_dev_cells = 0.0;
    int crossings_found = 0;
};

BoundaryReport entanglement_boundary_check(const SweepResult& fig3_inset);

// xi = 1 crossings along axis2 within each axis1 row of a 2-D steady sweep
// (log-xi sign changes, linearly interpolated in the axis2 coordinate).
ContourSet xi_unity_contour(const SweepResult& res);

struct FigureResult {
    std::string name;
    // (file tag, table); the CLI writes <name>_<tag>.csv (or <name>.csv for
    // the empty tag)
    std::vector<std::pair<std::string, SweepResult>> tables;
    std::vector<RhoSnapshot> snapshots;
    std::vector<ContourSet> contours;
    std::optional<BoundaryReport> boundary;
};

const std::vector<std::string>& figure_names();
FigureResult run_figure(const std::string& name, const SweepOptions& opts = {});

// Deterministic bounded-worker parallel map: fn(i) for i in [0, n).
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

} // namespace blockade
