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

#include "cqed/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cqed/config.hpp"

#ifndef CQED_VERSION
#define CQED_VERSION "0.0.0"
#endif

namespace cqed {

namespace {

// Metadata values end up in comment lines; keep each on one line.
std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

void write_metadata(std::ostream& out, const Metadata& meta) {
    out << "# tool = cqed " << tool_version() << '\n';
    for (const auto& [key, value] : meta) out << "# " << key << " = " << one_line(value) << '\n';
}

std::string optional_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("nan");
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round to a 1-2-5 step for tick placement.
double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) return m * mag;
    }
    return 10.0 * mag;
}

}  // namespace

const char* tool_version() { return CQED_VERSION; }

void write_sweep_csv(std::ostream& out, const Metadata& meta, const std::vector<SweepRow>& rows) {
    write_metadata(out, meta);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
    out << "# failed_points = " << failed << '\n';
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            out << "# failure at axis_value " << format_number(r.axis_value) << ": "
                << one_line(r.error) << '\n';
        }
    }
    std::size_t unconverged = 0;
    for (const auto& r : rows) unconverged += (r.error.empty() && !r.converged) ? 1 : 0;
    if (unconverged > 0) out << "# cutoff_converged = false\n";
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.axis_value) << ',' << format_number(r.mean_n) << ','
            << optional_number(r.g2) << ',' << optional_number(r.g3) << ','
            << (r.g2 ? 1 : 0) << ',' << (r.g3 ? 1 : 0) << ',' << format_number(r.residual) << ','
            << r.fock_cutoff_used << '\n';
    }
}

void write_point_csv(std::ostream& out, const Metadata& meta, const PointResult& point) {
    write_metadata(out, meta);
    out << kCsvHeader << '\n';
    const auto& s = point.stats;
    out << ',' << format_number(s.mean_n) << ',' << optional_number(s.g2) << ','
        << optional_number(s.g3) << ',' << (s.g2 ? 1 : 0) << ',' << (s.g3 ? 1 : 0) << ','
        << format_number(point.residual) << ',' << point.fock_cutoff << '\n';
}

void write_spectrum_csv(std::ostream& out, const Metadata& meta, const ManifoldSpectrum& spectrum) {
    write_metadata(out, meta);
    out << "energy,cavity_coupled,bright_weight,overlaps\n";
    for (const auto& s : spectrum.states) {
        std::string overlaps;
        for (const auto& o : s.overlaps) {
            if (!overlaps.empty()) overlaps += ';';
            overlaps += fmt::format("{}:{}", o.label, format_number(o.probability));
        }
        out << format_number(s.energy) << ',' << (s.cavity_coupled ? 1 : 0) << ','
            << format_number(s.bright_weight) << ",\"" << overlaps << "\"\n";
    }
}

std::string render_svg(const Plot& plot) {
    constexpr double kWidth = 720.0;
    constexpr double kHeight = 440.0;
    constexpr double kLeft = 80.0;
    constexpr double kRight = 150.0;
    constexpr double kTop = 40.0;
    constexpr double kBottom = 60.0;
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;

    auto usable = [&](double y) { return std::isfinite(y) && (!plot.log_y || y > 0.0); };
    auto ty = [&](double y) { return plot.log_y ? std::log10(y) : y; };

    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !usable(s.y[i])) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    }
    if (plot.reference_line && usable(*plot.reference_line)) {
        ymin = std::min(ymin, ty(*plot.reference_line));
        ymax = std::max(ymax, ty(*plot.reference_line));
    }
    if (!(xmin < xmax)) {
        xmin = std::isfinite(xmin) ? xmin - 1.0 : 0.0;
        xmax = xmin + 2.0;
    }
    if (!(ymin < ymax)) {
        ymin = std::isfinite(ymin) ? ymin - 1.0 : 0.0;
        ymax = ymin + 2.0;
    }
    if (plot.log_y) {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return kTop + (ymax - ty(y)) / (ymax - ymin) * ph; };

    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
        kWidth, kHeight);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                       kLeft + pw / 2, xml_escape(plot.title));
    svg += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
        "stroke=\"black\"/>\n",
        kLeft, kTop, pw, ph);

    // x ticks
    const double xs = nice_step(xmax - xmin, 8);
    for (double x = std::ceil(xmin / xs) * xs; x <= xmax + 1e-9 * xs; x += xs) {
        const double X = px(x);
        svg += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
            "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4}</text>\n",
            X, kTop + ph, kTop + ph + 5, kTop + ph + 20, fmt::format("{:g}", std::abs(x) < 1e-12 * xs ? 0.0 : x));
    }
    // y ticks
    const double ys = plot.log_y ? std::max(1.0, std::ceil((ymax - ymin) / 8)) : nice_step(ymax - ymin, 6);
    for (double v = std::ceil(ymin / ys) * ys; v <= ymax + 1e-9 * ys; v += ys) {
        const double Y = kTop + (ymax - v) / (ymax - ymin) * ph;
        const std::string label = plot.log_y ? fmt::format("1e{:g}", v)
                                             : fmt::format("{:g}", std::abs(v) < 1e-12 * ys ? 0.0 : v);
        svg += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>"
            "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5}</text>\n",
            kLeft - 5, Y, kLeft, kLeft - 8, Y + 4, label);
    }
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + pw / 2, kHeight - 15, xml_escape(plot.x_label));
    svg += fmt::format(
        "<text x=\"18\" y=\"{0:.2f}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0:.2f})\">{1}</text>\n",
        kTop + ph / 2, xml_escape(plot.y_label));

    if (plot.reference_line && usable(*plot.reference_line)) {
        const double Y = py(*plot.reference_line);
        svg += fmt::format(
            "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"black\" "
            "stroke-dasharray=\"8 3 2 3\"/>\n",
            kLeft, Y, kLeft + pw, Y);
    }

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const auto& s = plot.series[k];
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                svg += fmt::format(
                    "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                    s.color, points);
                points.clear();
            }
        };
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !usable(s.y[i])) {
                flush();
                continue;
            }
            if (!points.empty()) points += ' ';
            points += fmt::format("{:.2f},{:.2f}", px(s.x[i]), py(s.y[i]));
        }
        flush();
        const double ly = kTop + 15 + 18 * static_cast<double>(k);
        svg += fmt::format(
            "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
            "stroke-width=\"2\"/><text x=\"{4:.2f}\" y=\"{5:.2f}\">{6}</text>\n",
            kLeft + pw + 10, ly, kLeft + pw + 35, s.color, kLeft + pw + 40, ly + 4,
            xml_escape(s.name));
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace cqed
