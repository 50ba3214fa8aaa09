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

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cqed/config.hpp"
#include "cqed/report.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

/// One scan of a figure preset.  The file stem is the preset id plus the
/// suffix, e.g. "fig4b" + "_plus".
struct PresetCurve {
    std::string suffix;
    std::string label;  ///< legend text
    SweepSpec spec;     ///< spec.base.fock_cutoff is the preset cutoff
};

enum class PlotKind {
    mean_n,        ///< linear photon number
    g2,            ///< g2 on a log axis
    correlations,  ///< mean_n, g2 and g3 together on a log axis
};

struct Preset {
    std::string id;
    std::string title;
    PlotKind plot = PlotKind::correlations;
    std::vector<PresetCurve> curves;
};

/// fig2b, fig2c, fig3a, fig3b, fig3c, fig4b, fig4c, fig5a, fig5b, fig5c.
const std::vector<Preset>& presets();

/// Throws ConfigError for an unknown id.
const Preset& find_preset(std::string_view id);

struct CurveResult {
    std::string stem;
    std::string label;
    RunConfig resolved;  ///< parameters of the curve as run
    std::vector<SweepRow> rows;
};

struct FigureResult {
    const Preset* preset = nullptr;
    std::vector<CurveResult> curves;
    std::size_t total_points = 0;
    std::size_t failed_points = 0;

    /// More than 5% of all grid points failed.
    bool too_many_failures() const;
};

/// Runs every curve of a preset.  The preset fixes the physical parameters
/// and grids; from `settings` it takes the solver tolerances, the thread
/// count, auto_converge, max_cutoff and, when listed in explicit_keys,
/// fock_cutoff.
FigureResult run_figure(const Preset& preset, const RunConfig& settings);

/// Metadata block for one curve: preset id, curve stem and every resolved
/// parameter.
Metadata curve_metadata(const Preset& preset, const CurveResult& curve);

/// Writes <stem>.csv for every curve, plus <id>.svg when requested.
/// Returns the written paths in order.
std::vector<std::filesystem::path> write_figure(const FigureResult& result,
                                                const std::filesystem::path& dir, bool svg);

Plot figure_plot(const FigureResult& result);

}  // namespace cqed
