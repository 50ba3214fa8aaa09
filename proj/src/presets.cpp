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

#include "cqed/presets.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

namespace cqed {

namespace {

constexpr double kG = 20.0;

// Cutoffs at which every preset curve is converged to 1e-6 (relative,
// N_c against N_c + 2) on a coarse subgrid of its scan.
constexpr int kCutoffFig2 = 6;
constexpr int kCutoffFig3 = 8;
constexpr int kCutoffFig4 = 14;
constexpr int kCutoffFig5a = 8;
constexpr int kCutoffFig5b = 14;
constexpr int kCutoffFig5c = 10;

SweepSpec detuning_scan(ModelParams base) {
    SweepSpec s;
    s.base = base;
    s.axis = Axis::delta_p;
    s.start = -60.0;
    s.stop = 60.0;
    s.points = 241;
    return s;
}

SweepSpec control_scan(ModelParams base) {
    SweepSpec s;
    s.base = base;
    s.axis = Axis::omega_c;
    s.start = 0.0;
    s.stop = 20.0;
    s.points = 101;
    return s;
}

ModelParams equal_coupling(int cutoff) {
    ModelParams p = reference_params();
    p.fock_cutoff = cutoff;
    return p;
}

ModelParams opposite_coupling(int cutoff) {
    ModelParams p = reference_params();
    p.g2 = -kG;
    p.omega_p = 2.0;
    p.delta_c = std::sqrt(6.0) * kG / 2.0;
    p.fock_cutoff = cutoff;
    return p;
}

const char* sign_suffix(double sign) { return sign > 0 ? "_plus" : "_minus"; }
const char* sign_text(double sign) { return sign > 0 ? "+" : "-"; }

Preset fig2(const std::string& id, PlotKind plot, const std::string& title) {
    Preset p{id, title, plot, {}};
    for (double sign : {1.0, -1.0}) {
        for (double oc : {0.0, 5.0}) {
            ModelParams base = equal_coupling(kCutoffFig2);
            base.delta_c = sign * std::sqrt(2.0) * kG;
            base.omega_c = oc;
            p.curves.push_back({fmt::format("_oc{:g}{}", oc, sign_suffix(sign)),
                                fmt::format("Omega_C={:g}, Delta_c={}sqrt2 g", oc, sign_text(sign)),
                                detuning_scan(base)});
        }
    }
    return p;
}

Preset fig3(const std::string& id, double delta_p) {
    ModelParams base = equal_coupling(kCutoffFig3);
    base.omega_p = 1.5;
    base.delta_p = delta_p;
    return {id,
            fmt::format("g1 = g2, Omega_P = 1.5, Delta_p = {:g}", delta_p),
            PlotKind::correlations,
            {{"", fmt::format("Delta_p={:g}", delta_p), control_scan(base)}}};
}

Preset fig4(const std::string& id, double omega_c) {
    Preset p{id, fmt::format("g1 = -g2, Omega_P = 2, Omega_C = {:g}", omega_c),
             PlotKind::correlations, {}};
    for (double sign : {1.0, -1.0}) {
        ModelParams base = opposite_coupling(kCutoffFig4);
        base.delta_c = sign * std::sqrt(6.0) * kG / 2.0;
        base.omega_c = omega_c;
        p.curves.push_back({sign_suffix(sign),
                            fmt::format("Delta_c={}sqrt6 g/2", sign_text(sign)),
                            detuning_scan(base)});
    }
    return p;
}

Preset fig5(const std::string& id, double delta_p, int cutoff) {
    ModelParams base = opposite_coupling(cutoff);
    base.delta_p = delta_p;
    return {id,
            fmt::format("g1 = -g2, Omega_P = 2, Delta_p = {:g}", delta_p),
            PlotKind::correlations,
            {{"", fmt::format("Delta_p={:g}", delta_p), control_scan(base)}}};
}

std::string x_label(Axis axis) {
    switch (axis) {
        case Axis::delta_p: return "Delta_p / kappa";
        case Axis::omega_c: return "Omega_C / kappa";
        case Axis::delta_c: return "Delta_c / kappa";
        case Axis::omega_p: return "Omega_P / kappa";
    }
    return "";
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> table = {
        fig2("fig2b", PlotKind::mean_n, "g1 = g2, mean photon number"),
        fig2("fig2c", PlotKind::g2, "g1 = g2, g2(0)"),
        fig3("fig3a", -10.0),
        fig3("fig3b", -20.0),
        fig3("fig3c", -40.0),
        fig4("fig4b", 0.0),
        fig4("fig4c", 8.0),
        fig5("fig5a", -30.0, kCutoffFig5a),
        fig5("fig5b", 0.0, kCutoffFig5b),
        fig5("fig5c", -5.0, kCutoffFig5c),
    };
    return table;
}

const Preset& find_preset(std::string_view id) {
    for (const auto& p : presets()) {
        if (p.id == id) return p;
    }
    std::string known;
    for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.id;
    throw ConfigError(fmt::format("unknown figure preset '{}' (known: {})", id, known));
}

bool FigureResult::too_many_failures() const { return failed_points * 20 > total_points; }

FigureResult run_figure(const Preset& preset, const RunConfig& settings) {
    FigureResult out;
    out.preset = &preset;
    const SweepOptions options = settings.sweep_options();
    for (const auto& curve : preset.curves) {
        SweepSpec spec = curve.spec;
        if (settings.explicit_keys.count("fock_cutoff")) {
            spec.base.fock_cutoff = settings.params.fock_cutoff;
        }
        spec.auto_converge = settings.auto_converge;

        CurveResult r;
        r.stem = preset.id + curve.suffix;
        r.label = curve.label;
        r.rows = run_sweep(spec, options);

        r.resolved = settings;
        r.resolved.params = spec.base;
        r.resolved.axis = spec.axis;
        r.resolved.start = spec.start;
        r.resolved.stop = spec.stop;
        r.resolved.points = spec.points;
        r.resolved.auto_converge = spec.auto_converge;
        for (const auto& row : r.rows) {
            if (row.error.empty()) {
                r.resolved.params.fock_cutoff = row.fock_cutoff_used;
                break;
            }
        }

        out.total_points += r.rows.size();
        for (const auto& row : r.rows) out.failed_points += row.error.empty() ? 0 : 1;
        out.curves.push_back(std::move(r));
    }
    return out;
}

Metadata curve_metadata(const Preset& preset, const CurveResult& curve) {
    Metadata meta = {{"preset", preset.id}, {"curve", curve.stem}};
    for (auto& kv : describe(curve.resolved)) meta.push_back(std::move(kv));
    return meta;
}

Plot figure_plot(const FigureResult& result) {
    const Preset& preset = *result.preset;
    Plot plot;
    plot.title = preset.id + ": " + preset.title;
    plot.x_label = result.curves.empty() ? "" : x_label(result.curves.front().resolved.axis);
    plot.log_y = preset.plot != PlotKind::mean_n;
    plot.y_label = preset.plot == PlotKind::mean_n ? "<a^dag a>"
                   : preset.plot == PlotKind::g2   ? "g2(0)"
                                                   : "<a^dag a>, g2(0), g3(0)";
    if (plot.log_y) plot.reference_line = 1.0;

    std::size_t color = 0;
    auto next_color = [&] { return kPalette[color++ % std::size(kPalette)]; };
    for (const auto& c : result.curves) {
        std::vector<double> x, n, g2, g3;
        for (const auto& r : c.rows) {
            x.push_back(r.axis_value);
            const bool ok = r.error.empty();
            n.push_back(ok ? r.mean_n : NAN);
            g2.push_back(ok && r.g2 ? *r.g2 : NAN);
            g3.push_back(ok && r.g3 ? *r.g3 : NAN);
        }
        switch (preset.plot) {
            case PlotKind::mean_n:
                plot.series.push_back({c.label, next_color(), x, n});
                break;
            case PlotKind::g2:
                plot.series.push_back({c.label, next_color(), x, g2});
                break;
            case PlotKind::correlations:
                plot.series.push_back({"<n> " + c.label, next_color(), x, n});
                plot.series.push_back({"g2 " + c.label, next_color(), x, g2});
                plot.series.push_back({"g3 " + c.label, next_color(), x, g3});
                break;
        }
    }
    return plot;
}

std::vector<std::filesystem::path> write_figure(const FigureResult& result,
                                                const std::filesystem::path& dir, bool svg) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto open = [](const std::filesystem::path& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
        return out;
    };
    for (const auto& c : result.curves) {
        const auto path = dir / (c.stem + ".csv");
        auto out = open(path);
        write_sweep_csv(out, curve_metadata(*result.preset, c), c.rows);
        written.push_back(path);
    }
    if (svg) {
        const auto path = dir / (result.preset->id + ".svg");
        auto out = open(path);
        out << render_svg(figure_plot(result));
        written.push_back(path);
    }
    return written;
}

}  // namespace cqed
