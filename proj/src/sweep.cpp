// Copyright 2026 The cqed Authors
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

#include "cqed/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

namespace cqed {

PointResult solve_point(const ModelParams& params, const SteadyStateOptions& options) {
    const HilbertSpace space = params.space();
    const SteadyState ss = steady_state(build_liouvillian(params), options);
    return {photon_stats(ss.rho, space), ss.residual, params.fock_cutoff};
}

PointResult evolve_point(const ModelParams& params, double t_final,
                         const IntegratorOptions& options) {
    const HilbertSpace space = params.space();
    const auto jumps = collapse_operators(params, space);
    const Operator h = build_hamiltonian(params, space);
    const auto rho0 = DensityMatrix::pure(basis_ket(space, Level::g, Level::g, 0));
    const Evolution ev = time_evolve(h, jumps, rho0, t_final, options);
    const Liouvillian l = build_liouvillian(h, jumps);
    const double residual = (l.apply(ev.rho.matrix())).norm() / l.scale();
    return {photon_stats(ev.rho, space), residual, params.fock_cutoff};
}

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::delta_p: return "delta_p";
        case Axis::omega_c: return "omega_c";
        case Axis::delta_c: return "delta_c";
        case Axis::omega_p: return "omega_p";
    }
    return "unknown";
}

Axis parse_axis(std::string_view name) {
    for (Axis a : {Axis::delta_p, Axis::omega_c, Axis::delta_c, Axis::omega_p}) {
        if (to_string(a) == name) return a;
    }
    throw std::invalid_argument(fmt::format("unknown sweep axis '{}'", name));
}

ModelParams with_axis(ModelParams params, Axis axis, double value) {
    switch (axis) {
        case Axis::delta_p: params.delta_p = value; break;
        case Axis::omega_c: params.omega_c = value; break;
        case Axis::delta_c: params.delta_c = value; break;
        case Axis::omega_p: params.omega_p = value; break;
    }
    return params;
}

void SweepSpec::validate() const {
    base.validate();
    if (!std::isfinite(start) || !std::isfinite(stop)) {
        throw std::invalid_argument("sweep bounds must be finite");
    }
    if (!(start < stop)) throw std::invalid_argument("sweep start must be below stop");
    if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
    spec.validate();
    std::vector<double> grid(static_cast<std::size_t>(spec.points));
    const double span = spec.stop - spec.start;
    for (int i = 0; i < spec.points; ++i) {
        grid[static_cast<std::size_t>(i)] = spec.start + span * i / (spec.points - 1);
    }
    return grid;
}

namespace {

// Relative change of a against b, or 0 when both sit under the absolute floor.
double relative_change(double a, double b, double abs_floor) {
    const double diff = std::abs(a - b);
    if (diff <= abs_floor) return 0.0;
    const double mag = std::max(std::abs(a), std::abs(b));
    return mag == 0.0 ? 0.0 : diff / mag;
}

}  // namespace

bool stats_agree(const PhotonStats& a, const PhotonStats& b, double rel_tol, double abs_floor,
                 double* max_change) {
    double worst = relative_change(a.mean_n, b.mean_n, abs_floor);
    bool ok = true;
    auto compare = [&](const std::optional<double>& x, const std::optional<double>& y) {
        if (x.has_value() != y.has_value()) {
            ok = false;
            return;
        }
        if (x) worst = std::max(worst, relative_change(*x, *y, abs_floor));
    };
    compare(a.g2, b.g2);
    compare(a.g3, b.g3);
    if (max_change) *max_change = ok ? worst : INFINITY;
    return ok && worst < rel_tol;
}

CutoffConvergence converge_cutoff(const ModelParams& params, const ConvergenceOptions& options,
                                  const SteadyStateOptions& solver) {
    if (!(options.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be > 0");
    if (options.min_cutoff < 3 || options.max_cutoff < options.min_cutoff || options.step < 1) {
        throw std::invalid_argument("invalid cutoff ladder");
    }
    std::map<int, PhotonStats> cache;
    auto stats_at = [&](int cutoff) -> const PhotonStats& {
        auto it = cache.find(cutoff);
        if (it == cache.end()) {
            ModelParams p = params;
            p.fock_cutoff = cutoff;
            it = cache.emplace(cutoff, solve_point(p, solver).stats).first;
        }
        return it->second;
    };

    CutoffConvergence out;
    for (int cutoff = options.min_cutoff; cutoff <= options.max_cutoff; ++cutoff) {
        double change = 0.0;
        const bool ok = stats_agree(stats_at(cutoff), stats_at(cutoff + options.step),
                                    options.rel_tol, options.abs_floor, &change);
        out.fock_cutoff = cutoff;
        out.max_change = change;
        if (ok) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Runs task(i) for i in [0, count) on a bounded pool.
template <typename Task>
void parallel_for(std::size_t count, int threads, Task&& task) {
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(
        static_cast<std::size_t>(resolve_threads(threads)), std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) task(i);
        });
    }
}

SweepRow solve_row(const ModelParams& params, double axis_value, const SteadyStateOptions& solver) {
    SweepRow row;
    row.axis_value = axis_value;
    row.fock_cutoff_used = params.fock_cutoff;
    try {
        const PointResult r = solve_point(params, solver);
        row.mean_n = r.stats.mean_n;
        row.g2 = r.stats.g2;
        row.g3 = r.stats.g3;
        row.residual = r.residual;
        row.converged = true;
    } catch (const std::exception& e) {
        row.mean_n = std::nan("");
        row.residual = std::nan("");
        row.error = e.what();
    }
    return row;
}

}  // namespace

CutoffConvergence auto_cutoff(const SweepSpec& spec, const SweepOptions& options) {
    const auto grid = sweep_grid(spec);
    constexpr std::size_t kCoarsePoints = 25;
    const std::size_t stride = std::max<std::size_t>(1, (grid.size() - 1) / (kCoarsePoints - 1));
    std::vector<std::size_t> coarse;
    for (std::size_t i = 0; i < grid.size(); i += stride) coarse.push_back(i);

    std::vector<double> mean(coarse.size(), -1.0);
    parallel_for(coarse.size(), options.threads, [&](std::size_t k) {
        const auto row = solve_row(with_axis(spec.base, spec.axis, grid[coarse[k]]),
                                   grid[coarse[k]], options.solver);
        if (row.converged) mean[k] = row.mean_n;
    });
    const auto best = static_cast<std::size_t>(
        std::max_element(mean.begin(), mean.end()) - mean.begin());
    return converge_cutoff(with_axis(spec.base, spec.axis, grid[coarse[best]]),
                           options.convergence, options.solver);
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    const auto grid = sweep_grid(spec);
    ModelParams base = spec.base;
    bool cutoff_converged = true;
    if (spec.auto_converge) {
        const auto conv = auto_cutoff(spec, options);
        base.fock_cutoff = conv.fock_cutoff;
        cutoff_converged = conv.converged;
    }

    std::vector<SweepRow> rows(grid.size());
    parallel_for(grid.size(), options.threads, [&](std::size_t i) {
        rows[i] = solve_row(with_axis(base, spec.axis, grid[i]), grid[i], options.solver);
        if (!cutoff_converged) rows[i].converged = false;
    });
    return rows;
}

std::vector<Peak> peak_structure(const std::vector<SweepRow>& rows) {
    std::vector<double> axis;
    std::vector<double> mean;
    for (const auto& r : rows) {
        axis.push_back(r.axis_value);
        mean.push_back(r.mean_n);
    }
    return peak_structure(axis, mean);
}

}  // namespace cqed
