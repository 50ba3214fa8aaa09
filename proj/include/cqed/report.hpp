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
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cqed/observables.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Version string written into every output file.
const char* tool_version();

inline constexpr const char* kCsvHeader =
    "axis_value,mean_n,g2,g3,g2_defined,g3_defined,residual,fock_cutoff";

/// Sweep table: `# key = value` metadata lines (tool version first, then
/// `meta`, then one line per failed point), a header row, and one row per
/// point.  Undefined correlations are written as nan with a 0 flag.
void write_sweep_csv(std::ostream& out, const Metadata& meta, const std::vector<SweepRow>& rows);

/// Single-point record in the same column layout, with axis_value empty.
void write_point_csv(std::ostream& out, const Metadata& meta, const PointResult& point);

/// Dressed-state table: energy, coupling flag, bright weight and the
/// collective-state overlaps as `label:probability` pairs.
void write_spectrum_csv(std::ostream& out, const Metadata& meta, const ManifoldSpectrum& spectrum);

struct PlotSeries {
    std::string name;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::optional<double> reference_line;  ///< horizontal guide, e.g. g2 = 1
    std::vector<PlotSeries> series;
};

/// Self-contained SVG line plot.  Non-finite points, and non-positive ones
/// on a log axis, break the polyline.
std::string render_svg(const Plot& plot);

}  // namespace cqed
