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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/model.hpp"
#include "cqed/observables.hpp"

namespace cqed {

/// Steady-state photon statistics of one parameter point.
struct PointResult {
    PhotonStats stats;
    double residual = 0.0;
    int fock_cutoff = 0;
};

PointResult solve_point(const ModelParams& params, const SteadyStateOptions& options = {});

/// Same observables from time evolution of the vacuum |gg,0> up to t_final.
PointResult evolve_point(const ModelParams& params, double t_final,
                         const IntegratorOptions& options = {});

enum class Axis { delta_p, omega_c, delta_c, omega_p };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view name);

/// Returns params with the axis quantity set to value.
ModelParams with_axis(ModelParams params, Axis axis, double value);

struct SweepSpec {
    ModelParams base;
    Axis axis = Axis::delta_p;
    double start = -60.0;
    double stop = 60.0;
    int points = 241;
    bool auto_converge = false;

    void validate() const;
};

/// Inclusive uniform grid start + i (stop - start) / (points - 1).
std::vector<double> sweep_grid(const SweepSpec& spec);

struct SweepRow {
    double axis_value = 0.0;
    double mean_n = 0.0;
    std::optional<double> g2;
    std::optional<double> g3;
    double residual = 0.0;
    int fock_cutoff_used = 0;
    bool converged = false;
    std::string error;  ///< empty unless the point failed
};

struct ConvergenceOptions {
    double rel_tol = 1e-6;
    double abs_floor = 1e-12;
    int min_cutoff = 3;
    int max_cutoff = 14;
    int step = 2;  ///< compare N_c with N_c + step
};

struct CutoffConvergence {
    int fock_cutoff = 0;
    bool converged = false;
    double max_change = 0.0;  ///< worst relative change seen at the returned cutoff
};

/// Smallest N_c >= min_cutoff for which mean_n, g2 and g3 change by less
/// than rel_tol (relative, with an absolute floor) when recomputed at
/// N_c + step.  Stops at max_cutoff with converged = false.
CutoffConvergence converge_cutoff(const ModelParams& params, const ConvergenceOptions& options = {},
                                  const SteadyStateOptions& solver = {});

/// True when a and b agree within rel_tol relative to the larger magnitude,
/// or within abs_floor.  Two undefined values agree; defined vs undefined do not.
bool stats_agree(const PhotonStats& a, const PhotonStats& b, double rel_tol, double abs_floor,
                 double* max_change = nullptr);

struct SweepOptions {
    int threads = 0;  ///< 0 selects std::thread::hardware_concurrency()
    SteadyStateOptions solver;
    ConvergenceOptions convergence;
};

/// Solves every grid point.  Points are independent tasks distributed over a
/// bounded worker pool; rows are stored by grid index, so the output order
/// and values do not depend on scheduling.  Failures are confined to their
/// row.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// Cutoff chosen by the auto-converge pre-pass for this spec.
CutoffConvergence auto_cutoff(const SweepSpec& spec, const SweepOptions& options = {});

std::vector<Peak> peak_structure(const std::vector<SweepRow>& rows);

}  // namespace cqed
