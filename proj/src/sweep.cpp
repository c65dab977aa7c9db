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

#include "blockade/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

namespace blockade {

namespace {

constexpr double kSentinelTol = 1e-5;

double observable_delta(const std::optional<double>& a,
                        const std::optional<double>& b) {
    if (!a && !b) return 0.0;
    if (!a || !b) return 1e300;
    return std::abs(*a - *b);
}

} // namespace

bool is_axis_name(const std::string& name) {
    static const std::set<std::string> names = {
        "delta_a", "delta_c",        "g0",
        "phi_z",   "eta",            "gamma",
        "kappa",   "n_max",          "g0_over_kappa",
        "gamma_over_kappa", "eta_over_gamma", "delta_over_kappa",
        "phi_z_over_pi"};
    return names.count(name) > 0;
}

ModelParams apply_axis(ModelParams p, const std::string& name, double value) {
    if (name == "delta_a") p.delta_a = value;
    else if (name == "delta_c") p.delta_c = value;
    else if (name == "g0") p.g0 = value;
    else if (name == "phi_z") p.phi_z = value;
    else if (name == "eta") p.eta = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "kappa") p.kappa = value;
    else if (name == "n_max") {
        const int n = static_cast<int>(std::lround(value));
        if (std::abs(value - n) > 1e-9)
            throw std::invalid_argument("n_max axis values must be integers");
        p.n_max = n;
    } else if (name == "g0_over_kappa") p.g0 = value * p.kappa;
    else if (name == "gamma_over_kappa") p.gamma = value * p.kappa;
    else if (name == "eta_over_gamma") p.eta = value * p.gamma;
    else if (name == "delta_over_kappa") {
        p.delta_a = value * p.kappa;
        p.delta_c = value * p.kappa;
    } else if (name == "phi_z_over_pi") p.phi_z = value * M_PI;
    else throw std::invalid_argument("unknown sweep parameter: " + name);
    return p;
}

std::vector<double> lin_grid(double lo, double hi, int n) {
    if (n < 2 || !(hi > lo))
        throw std::invalid_argument("lin_grid needs n >= 2 and hi > lo");
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return v;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (n < 2 || !(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("log_grid needs n >= 2 and hi > lo > 0");
    std::vector<double> v(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        v[i] = std::exp(llo + (lhi - llo) * double(i) / double(n - 1));
    v.front() = lo;
    v.back() = hi;
    return v;
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc ? static_cast<int>(hc) : 1;
    }
    workers = std::min<int>(workers, static_cast<int>(n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

namespace {

struct GridPoint {
    std::size_t i1 = 0;
    std::optional<std::size_t> i2;
};

std::vector<GridPoint> grid_points(const SweepSpec& spec) {
    std::vector<GridPoint> pts;
    const std::size_t n1 = spec.axis1.values.size();
    if (spec.axis2) {
        const std::size_t n2 = spec.axis2->values.size();
        pts.reserve(n1 * n2);
        for (std::size_t i = 0; i < n1; ++i)
            for (std::size_t j = 0; j < n2; ++j) pts.push_back({i, j});
    } else {
        pts.reserve(n1);
        for (std::size_t i = 0; i < n1; ++i) pts.push_back({i, std::nullopt});
    }
    return pts;
}

ModelParams resolve_point(const SweepSpec& spec, const GridPoint& gp) {
    ModelParams p = spec.base;
    std::vector<std::pair<std::string, double>> assigns;
    assigns.emplace_back(spec.axis1.name, spec.axis1.values[gp.i1]);
    if (gp.i2) assigns.emplace_back(spec.axis2->name, spec.axis2->values[*gp.i2]);
    for (const auto& f : spec.fixed) assigns.push_back(f);
    // eta_over_gamma depends on gamma, which may itself be assigned: do it last
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& [name, value] : assigns)
            if ((name == "eta_over_gamma") == (pass == 1))
                p = apply_axis(p, name, value);
    if (!spec.n_max_per_axis2.empty() && gp.i2)
        p.n_max = spec.n_max_per_axis2[*gp.i2];
    return p;
}

void validate_spec(const SweepSpec& spec) {
    if (!is_axis_name(spec.axis1.name))
        throw std::invalid_argument("unknown axis parameter: " + spec.axis1.name);
    if (spec.axis2 && !is_axis_name(spec.axis2->name))
        throw std::invalid_argument("unknown axis parameter: " + spec.axis2->name);
    auto check_grid = [](const AxisSpec& a) {
        if (a.values.empty())
            throw std::invalid_argument("axis grid must not be empty");
        for (std::size_t i = 1; i < a.values.size(); ++i)
            if (!(a.values[i] > a.values[i - 1]))
                throw std::invalid_argument("axis grid must be strictly increasing");
        for (double v : a.values)
            if (!std::isfinite(v))
                throw std::invalid_argument("axis grid must be finite");
    };
    check_grid(spec.axis1);
    if (spec.axis2) check_grid(*spec.axis2);
    for (const auto& [name, value] : spec.fixed) {
        if (!is_axis_name(name))
            throw std::invalid_argument("unknown fixed parameter: " + name);
        if (!std::isfinite(value))
            throw std::invalid_argument("fixed parameter value must be finite");
    }
    if (spec.mode == SweepMode::Evolve &&
        (!(spec.evolve_horizon > 0.0) || !(spec.dt_out > 0.0)))
        throw std::invalid_argument("evolve sweep needs evolve_horizon and dt_out");
    if (!spec.n_max_per_axis2.empty() &&
        (!spec.axis2 || spec.n_max_per_axis2.size() != spec.axis2->values.size()))
        throw std::invalid_argument("n_max_per_axis2 must match the axis2 grid");
    for (const auto& name : spec.observables) (void)observable_by_name({}, name);
}

Operator ground_state(const ModelParams& p) {
    const HilbertSpace space = make_space(p.n_max);
    Matrix rho(space.total_dim, space.total_dim);
    rho(0, 0) = 1.0; // |gg,0><gg,0|
    return {space, std::move(rho)};
}

// One grid point worth of rows (a single row for steady, a series for evolve).
std::vector<SweepRow> eval_point(const SweepSpec& spec, const GridPoint& gp,
                                 int n_max_override) {
    SweepRow proto;
    proto.axis1_value = spec.axis1.values[gp.i1];
    if (gp.i2) proto.axis2_value = spec.axis2->values[*gp.i2];
    std::vector<SweepRow> rows;
    try {
        ModelParams p = resolve_point(spec, gp);
        if (n_max_override > 0) p.n_max = n_max_override;
        proto.n_max_used = p.n_max;
        if (spec.mode == SweepMode::Steady) {
            const SteadyStateResult ss = steady_state(build_liouvillian(p));
            SweepRow row = proto;
            row.result = compute_observables(ss.rho);
            row.residual = ss.residual;
            rows.push_back(std::move(row));
        } else {
            EvolveOptions eo;
            eo.store_states = false;
            const Trajectory tr =
                evolve(p, ground_state(p), spec.evolve_horizon, spec.dt_out, eo);
            rows.reserve(tr.times.size());
            for (std::size_t k = 0; k < tr.times.size(); ++k) {
                SweepRow row = proto;
                row.time = tr.times[k];
                row.result = tr.observables[k];
                row.residual = tr.trace_defects[k];
                rows.push_back(std::move(row));
            }
        }
    } catch (const std::exception& e) {
        SweepRow row = proto;
        row.failed = true;
        row.error = e.what();
        rows.assign(1, std::move(row));
    }
    return rows;
}

std::vector<std::size_t> sentinel_indices(std::size_t n) {
    std::set<std::size_t> s = {0, n / 4, n / 2, (3 * n) / 4, n - 1};
    return {s.begin(), s.end()};
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec, const SweepOptions& opts) {
    validate_spec(spec);
    spec.base.validate();
    const std::vector<GridPoint> pts = grid_points(spec);
    std::vector<std::vector<SweepRow>> per_point(pts.size());
    parallel_for(pts.size(), opts.workers, [&](std::size_t i) {
        per_point[i] = eval_point(spec, pts[i], 0);
    });

    SweepResult out;
    out.spec = spec;
    for (auto& rows : per_point)
        for (auto& row : rows) out.rows.push_back(std::move(row));

    if (opts.sentinel && !pts.empty()) {
        const std::vector<std::string>& names =
            spec.observables.empty() ? observable_names() : spec.observables;
        out.sentinel.performed = true;
        out.sentinel.grid_indices = sentinel_indices(pts.size());
        std::vector<double> drifts(out.sentinel.grid_indices.size(), 0.0);
        parallel_for(out.sentinel.grid_indices.size(), opts.workers,
                     [&](std::size_t k) {
            const std::size_t pi = out.sentinel.grid_indices[k];
            const std::vector<SweepRow>& base_rows = per_point[pi];
            if (base_rows.empty() || base_rows.front().failed) return;
            const int doubled = 2 * base_rows.front().n_max_used;
            const std::vector<SweepRow> redo = eval_point(spec, pts[pi], doubled);
            if (redo.size() != base_rows.size() || redo.front().failed) {
                drifts[k] = 1e300;
                return;
            }
            double d = 0.0;
            for (std::size_t r = 0; r < redo.size(); ++r)
                for (const auto& name : names)
                    d = std::max(d, observable_delta(
                                        observable_by_name(*base_rows[r].result, name),
                                        observable_by_name(*redo[r].result, name)));
            drifts[k] = d;
        });
        for (double d : drifts) out.sentinel.max_drift = std::max(out.sentinel.max_drift, d);
        out.sentinel.passed = out.sentinel.max_drift < kSentinelTol;
    }
    return out;
}

int ladder_n_max(const ModelParams& p, const std::vector<std::string>& names,
                 int cap) {
    const std::vector<std::string>& selected =
        names.empty() ? observable_names() : names;
    // Consecutive-level agreement at 5e-6; the truncation error decays fast
    // enough with n_max that the doubled-n sentinel re-runs stay inside the
    // 1e-5 budget from here.
    constexpr double kStepTol = 5e-6;
    SimResult prev = compute_observables(
        steady_state(build_liouvillian(p.with_n_max(2))).rho);
    for (int n = 3; n <= cap; ++n) {
        const SimResult cur = compute_observables(
            steady_state(build_liouvillian(p.with_n_max(n))).rho);
        double delta = 0.0;
        for (const auto& name : selected)
            delta = std::max(delta, observable_delta(observable_by_name(prev, name),
                                                     observable_by_name(cur, name)));
        prev = cur;
        if (delta < kStepTol) return n;
    }
    return cap;
}

int probe_n_max(const SweepSpec& spec, int cap) {
    validate_spec(spec);
    std::vector<GridPoint> probes;
    const std::size_t n1 = spec.axis1.values.size();
    if (spec.axis2) {
        const std::size_t n2 = spec.axis2->values.size();
        probes = {{0, std::size_t(0)},      {n1 - 1, std::size_t(0)},
                  {0, n2 - 1},              {n1 - 1, n2 - 1},
                  {n1 / 2, n2 / 2}};
    } else {
        probes = {{0, std::nullopt}, {n1 - 1, std::nullopt}, {n1 / 2, std::nullopt}};
    }
    int best = 2;
    for (const GridPoint& gp : probes)
        best = std::max(
            best, ladder_n_max(resolve_point(spec, gp), spec.observables, cap));
    return best;
}

std::vector<int> probe_n_max_per_axis2(const SweepSpec& spec, int cap) {
    validate_spec(spec);
    if (!spec.axis2)
        throw std::invalid_argument("probe_n_max_per_axis2 needs a second axis");
    const std::size_t n1 = spec.axis1.values.size();
    std::vector<int> out(spec.axis2->values.size(), 2);
    for (std::size_t j = 0; j < spec.axis2->values.size(); ++j) {
        for (std::size_t i1 : {std::size_t(0), n1 / 2, n1 - 1}) {
            const GridPoint gp{i1, j};
            out[j] = std::max(
                out[j], ladder_n_max(resolve_point(spec, gp), spec.observables, cap));
        }
    }
    return out;
}

// --- figure presets ---------------------------------------------------

namespace {

ModelParams preset_base() {
    ModelParams p;
    p.delta_a = 0.0;
    p.delta_c = 0.0;
    p.g0 = 1.0;
    p.phi_z = M_PI;
    p.eta = 0.05;
    p.kappa = 1.0;
    p.gamma = 0.01;
    p.n_max = 10;
    return p;
}

// 10^(-4 + k/8) up to 1: hits 1e-3, 1e-2, 0.1, 1 exactly.
std::vector<double> gamma_grid_fig3() {
    std::vector<double> v;
    for (int k = 0; k <= 32; ++k) v.push_back(std::pow(10.0, -4.0 + k / 8.0));
    return v;
}

SweepResult run_with_probed_n_max(SweepSpec spec, const SweepOptions& opts) {
    if (spec.axis2)
        spec.n_max_per_axis2 = probe_n_max_per_axis2(spec);
    else
        spec.base.n_max = probe_n_max(spec);
    return run_sweep(spec, opts);
}

Matrix snapshot_rho_atom(const ModelParams& p) {
    const SteadyStateResult ss = steady_state(build_liouvillian(p));
    return partial_trace(ss.rho, {0, 1});
}

ContourSet xi_unity_contour_impl(const SweepResult& res) {
    ContourSet out;
    out.label = "xi_equals_1";
    if (!res.spec.axis2) return out;
    const std::size_t n1 = res.spec.axis1.values.size();
    const std::size_t n2 = res.spec.axis2->values.size();
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j + 1 < n2; ++j) {
            const SweepRow& a = res.rows[i * n2 + j];
            const SweepRow& b = res.rows[i * n2 + j + 1];
            if (a.failed || b.failed || !a.result->xi || !b.result->xi) continue;
            const double fa = std::log10(*a.result->xi);
            const double fb = std::log10(*b.result->xi);
            if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
            if (fa == 0.0 || fa * fb >= 0.0) continue;
            const double frac = fa / (fa - fb);
            const double x2 = res.spec.axis2->values[j] +
                              frac * (res.spec.axis2->values[j + 1] -
                                      res.spec.axis2->values[j]);
            out.points.push_back({res.spec.axis1.values[i], x2});
        }
    return out;
}

FigureResult figure_fig2(const SweepOptions& opts) {
    FigureResult fig;
    fig.name = "fig2";
    SweepSpec spec;
    spec.base = preset_base();
    spec.axis1 = {"g0_over_kappa", log_grid(0.02, 2.0, 60)};
    spec.axis2 = AxisSpec{"gamma_over_kappa", {0.001, 0.01, 0.1, 1.0}};
    spec.fixed = {{"eta_over_gamma", 5.0}};
    spec.observables = {"p_ee", "xi", "g2_0"};
    fig.tables.emplace_back("", run_with_probed_n_max(spec, opts));
    return fig;
}

FigureResult figure_fig2_inset(const SweepOptions& opts) {
    FigureResult fig;
    fig.name = "fig2-inset";
    SweepSpec spec;
    spec.base = preset_base();
    spec.axis1 = {"g0_over_kappa", log_grid(0.02, 2.0, 41)};
    spec.axis2 = AxisSpec{"delta_over_kappa", lin_grid(-3.0, 3.0, 41)};
    spec.fixed = {{"gamma_over_kappa", 0.01}, {"eta_over_gamma", 5.0}};
    spec.observables = {"xi"};
    SweepResult res = run_with_probed_n_max(spec, opts);
    fig.contours.push_back(xi_unity_contour_impl(res));
    fig.tables.emplace_back("", std::move(res));
    return fig;
}

FigureResult figure_fig3(const SweepOptions& opts) {
    FigureResult fig;
    fig.name = "fig3";
    SweepSpec spec;
    spec.base = preset_base();
    spec.axis1 = {"gamma_over_kappa", gamma_grid_fig3()};
    spec.fixed = {{"eta_over_gamma", 5.0}};
    spec.observables = {"concurrence", "p_ee"};
    SweepResult res = run_with_probed_n_max(spec, opts);

    // bar-diagram snapshots at the two quoted decay rates
    for (const double g : {5e-3, 1e-3}) {
        ModelParams p = spec.base;
        p.gamma = g;
        p.eta = 5.0 * g;
        p.n_max = ladder_n_max(p.with_n_max(2), spec.observables, 16);
        fig.snapshots.push_back(
            {g == 5e-3 ? "rho_atom_gamma_5e-3" : "rho_atom_gamma_1e-3",
             snapshot_rho_atom(p)});
    }
    fig.tables.emplace_back("", std::move(res));
    return fig;
}

FigureResult figure_fig3_inset(const SweepOptions& opts) {
    FigureResult fig;
    fig.name = "fig3-inset";
    SweepSpec spec;
    spec.base = preset_base();
    spec.axis1 = {"g0_over_kappa", log_grid(0.05, 3.0, 41)};
    spec.axis2 = AxisSpec{"eta_over_gamma", log_grid(0.2, 40.0, 41)};
    spec.fixed = {{"gamma_over_kappa", 0.01}};
    spec.observables = {"concurrence"};
    SweepResult res = run_with_probed_n_max(spec, opts);
    fig.boundary = entanglement_boundary_check(res);
    fig.tables.emplace_back("", std::move(res));
    return fig;
}

FigureResult figure_fig4(const SweepOptions& opts) {
    FigureResult fig;
    fig.name = "fig4";
    SweepSpec spec;
    spec.base = preset_base();
    spec.axis1 = {"g0_over_kappa", log_grid(0.02, 2.0, 41)};
    spec.axis2 = AxisSpec{"phi_z_over_pi", lin_grid(0.0, 2.0, 41)};
    spec.fixed = {{"gamma_over_kappa", 0.01}, {"eta_over_gamma", 5.0}};
    spec.observables = {"xi", "concurrence"};
    SweepResult res = run_with_probed_n_max(spec, opts);
    fig.contours.push_back(xi_unity_contour_impl(res));
    fig.tables.emplace_back("", std::move(res));
    return fig;
}

// fig5a runs on a per-series horizon and truncation, so the trajectories
// are assembled directly rather than through run_sweep.
FigureResult figure_fig5a(const SweepOptions& opts) {
    FigureResult fig;
    fig.name = "fig5a";
    const std::vector<double> gammas = {0.001, 0.01, 0.1, 1.0};

    SweepSpec spec;
    spec.base = preset_base();
    spec.axis1 = {"gamma_over_kappa", gammas};
    spec.fixed = {{"eta_over_gamma", 5.0}};
    spec.mode = SweepMode::Evolve;
    spec.observables = {"p_ee", "concurrence"};

    auto series_params = [&](double gamma, int n_max) {
        ModelParams p = spec.base;
        p.gamma = gamma;
        p.eta = 5.0 * gamma;
        p.n_max = n_max;
        return p;
    };
    std::vector<int> n_series(gammas.size());
    for (std::size_t i = 0; i < gammas.size(); ++i)
        n_series[i] =
            ladder_n_max(series_params(gammas[i], 2), spec.observables, 16);
    spec.n_max_per_axis2.clear();

    auto run_series = [&](double gamma, int n_max) {
        const ModelParams p = series_params(gamma, n_max);
        // the first handful of Rabi periods carries the physics; 5/gamma
        // would make the weak-decay series needlessly long
        const double period = M_PI / (std::sqrt(2.0) * p.eta);
        const double t_end = std::min(5.0 / gamma, 8.0 * period);
        const double dt_out = t_end / 2000.0;
        EvolveOptions eo;
        eo.store_states = false;
        return evolve(p, ground_state(p), t_end, dt_out, eo);
    };

    std::vector<Trajectory> trs(gammas.size());
    parallel_for(gammas.size(), opts.workers,
                 [&](std::size_t i) { trs[i] = run_series(gammas[i], n_series[i]); });

    SweepResult res;
    res.spec = spec;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        for (std::size_t k = 0; k < trs[i].times.size(); ++k) {
            SweepRow row;
            row.axis1_value = gammas[i];
            row.time = trs[i].times[k];
            row.result = trs[i].observables[k];
            row.residual = trs[i].trace_defects[k];
            row.n_max_used = n_series[i];
            res.rows.push_back(std::move(row));
        }
    }

    if (opts.sentinel) {
        res.sentinel.performed = true;
        res.sentinel.grid_indices = {0, 1, 2, 3};
        std::vector<double> drifts(gammas.size(), 0.0);
        parallel_for(gammas.size(), opts.workers, [&](std::size_t i) {
            const Trajectory redo = run_series(gammas[i], 2 * n_series[i]);
            double d = 0.0;
            for (std::size_t k = 0; k < redo.times.size(); ++k)
                for (const auto& name : spec.observables)
                    d = std::max(d, observable_delta(
                                        observable_by_name(trs[i].observables[k], name),
                                        observable_by_name(redo.observables[k], name)));
            drifts[i] = d;
        });
        for (double d : drifts)
            res.sentinel.max_drift = std::max(res.sentinel.max_drift, d);
        res.sentinel.passed = res.sentinel.max_drift < kSentinelTol;
    }
    fig.tables.emplace_back("", std::move(res));
    return fig;
}

FigureResult figure_fig5b(const SweepOptions& opts) {
    FigureResult fig;
    fig.name = "fig5b";
    SweepSpec spec;
    spec.base = preset_base();
    spec.base.gamma = 1e-3;
    spec.base.eta = 20.0 * spec.base.gamma;
    spec.base.g0 = 4.0;
    spec.axis1 = {"gamma_over_kappa", {1e-3}};
    spec.mode = SweepMode::Evolve;
    const double period = M_PI / (std::sqrt(2.0) * spec.base.eta);
    spec.evolve_horizon = 3.0 * period;
    spec.dt_out = period / 2000.0;
    spec.observables = {"concurrence", "p_ee"};
    spec.base.n_max = ladder_n_max(spec.base.with_n_max(2), spec.observables, 16);
    SweepResult res = run_sweep(spec, opts);

    // two-qubit state at the first concurrence maximum, t = pi/(2 sqrt(2) eta)
    const double t_peak = 0.5 * period;
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < res.rows.size(); ++k) {
        if (res.rows[k].failed || !res.rows[k].time) continue;
        if (!best || std::abs(*res.rows[k].time - t_peak) <
                         std::abs(*res.rows[*best].time - t_peak))
            best = k;
    }
    if (best)
        fig.snapshots.push_back({"rho_atom_peak", res.rows[*best].result->rho_atom});

    fig.tables.emplace_back("", std::move(res));
    return fig;
}

} // namespace

ContourSet xi_unity_contour(const SweepResult& res) {
    return xi_unity_contour_impl(res);
}

BoundaryReport entanglement_boundary_check(const SweepResult& inset) {
    if (!inset.spec.axis2 || inset.spec.axis2->name != "eta_over_gamma")
        throw std::invalid_argument(
            "boundary check expects a (g0, eta_over_gamma) sweep");
    BoundaryReport rep;
    const double conc_level = 0.45;
    const auto& g0s = inset.spec.axis1.values;
    const auto& etas = inset.spec.axis2->values; // in units of gamma
    const std::size_t n2 = etas.size();

    double gamma = inset.spec.base.gamma;
    for (const auto& [name, value] : inset.spec.fixed)
        if (name == "gamma_over_kappa") gamma = value * inset.spec.base.kappa;
    const double kappa = inset.spec.base.kappa;

    // log-grid cell size for the deviation-in-cells figure
    const double cell = std::log(etas[1] / etas[0]);

    for (std::size_t i = 0; i < g0s.size(); ++i) {
        BoundaryRow row;
        row.g0 = g0s[i];
        row.eta_analytic_low = (gamma / std::sqrt(2.0)) / gamma;
        row.eta_analytic_high = (row.g0 * row.g0 / (2.0 * std::sqrt(2.0) * kappa)) / gamma;
        for (std::size_t j = 0; j + 1 < n2; ++j) {
            const SweepRow& a = inset.rows[i * n2 + j];
            const SweepRow& b = inset.rows[i * n2 + j + 1];
            if (a.failed || b.failed) continue;
            const double ca = a.result->concurrence - conc_level;
            const double cb = b.result->concurrence - conc_level;
            if (ca == 0.0 || ca * cb >= 0.0) continue;
            const double frac = ca / (ca - cb);
            const double eta_cross =
                std::exp(std::log(etas[j]) + frac * std::log(etas[j + 1] / etas[j]));
            if (cb > ca) {
                if (!row.eta_cross_low) row.eta_cross_low = eta_cross;
            } else {
                row.eta_cross_high = eta_cross;
            }
        }
        if (row.eta_cross_low) {
            row.dev_cells_low =
                std::abs(std::log(*row.eta_cross_low / row.eta_analytic_low)) / cell;
            rep.max_dev_cells = std::max(rep.max_dev_cells, *row.dev_cells_low);
            ++rep.crossings_found;
        }
        if (row.eta_cross_high) {
            row.dev_cells_high =
                std::abs(std::log(*row.eta_cross_high / row.eta_analytic_high)) / cell;
            rep.max_dev_cells = std::max(rep.max_dev_cells, *row.dev_cells_high);
            ++rep.crossings_found;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

const std::vector<std::string>& figure_names() {
    static const std::vector<std::string> names = {
        "fig2", "fig2-inset", "fig3", "fig3-inset", "fig4", "fig5a", "fig5b"};
    return names;
}

FigureResult run_figure(const std::string& name, const SweepOptions& opts) {
    if (name == "fig2") return figure_fig2(opts);
    if (name == "fig2-inset") return figure_fig2_inset(opts);
    if (name == "fig3") return figure_fig3(opts);
    if (name == "fig3-inset") return figure_fig3_inset(opts);
    if (name == "fig4") return figure_fig4(opts);
    if (name == "fig5a") return figure_fig5a(opts);
    if (name == "fig5b") return figure_fig5b(opts);
    throw std::invalid_argument("unknown figure: " + name);
}

} // namespace blockade
