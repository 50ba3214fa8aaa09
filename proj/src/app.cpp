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

#include "cqed/app.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cqed/config.hpp"
#include "cqed/observables.hpp"
#include "cqed/presets.hpp"
#include "cqed/report.hpp"
#include "cqed/selfcheck.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

namespace {

struct Flags {
    std::string config;
    std::optional<std::string> output;
    std::optional<int> threads;
    std::optional<int> fock_cutoff;
    bool auto_converge = false;
    bool svg = false;
    bool via_time_evolution = false;
    std::string preset;
    std::optional<int> n_exc;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "JSON config file (flat object of RunConfig keys)");
    cmd->add_option("--output", f.output, "output file, or directory for figure");
    cmd->add_option("--threads", f.threads, "worker threads (0: all cores)");
    cmd->add_option("--fock-cutoff", f.fock_cutoff, "photon-number cutoff N_c");
    cmd->add_flag("--auto-converge", f.auto_converge, "choose N_c by the convergence ladder");
    cmd->add_flag("--svg", f.svg, "also write an SVG line plot");
    cmd->add_flag("--via-time-evolution", f.via_time_evolution,
                  "solve by integrating from the vacuum instead of the linear solve");
}

// Keys a figure preset fixes.
constexpr std::string_view kPresetKeys[] = {
    "g1",    "g2",       "omega_p", "omega_c",       "delta_p", "delta_c", "kappa",
    "gamma_m", "gamma_e", "cavity_offset", "axis",  "start",   "stop",    "points",
};

RunConfig resolve(const Flags& f) {
    RunConfig c;
    if (!f.config.empty()) c = load_config(f.config);
    if (f.output) {
        c.output = *f.output;
        c.explicit_keys.insert("output");
    }
    if (f.threads) {
        c.threads = *f.threads;
        c.explicit_keys.insert("threads");
    }
    if (f.fock_cutoff) {
        c.params.fock_cutoff = *f.fock_cutoff;
        c.explicit_keys.insert("fock_cutoff");
    }
    if (f.auto_converge) {
        c.auto_converge = true;
        c.explicit_keys.insert("auto_converge");
    }
    if (f.svg) {
        c.svg = true;
        c.explicit_keys.insert("svg");
    }
    if (f.via_time_evolution) {
        c.via_time_evolution = true;
        c.explicit_keys.insert("via_time_evolution");
    }
    if (f.n_exc) {
        c.n_exc = *f.n_exc;
        c.explicit_keys.insert("n_exc");
    }
    c.validate();
    return c;
}

Metadata run_metadata(std::string_view command, const RunConfig& c) {
    Metadata meta = {{"command", std::string(command)}};
    for (auto& kv : describe(c)) meta.push_back(std::move(kv));
    return meta;
}

// Writes to the --output file, or to `fallback` when none was given.
template <typename Writer>
void emit(const RunConfig& c, std::ostream& fallback, Writer write) {
    if (c.output.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(c.output, std::ios::binary);
    if (!file) throw ConfigError(fmt::format("cannot write '{}'", c.output));
    write(file);
}

void reject_for(const RunConfig& c, std::string_view command,
                std::initializer_list<std::string_view> keys) {
    for (auto key : keys) {
        if (c.explicit_keys.count(std::string(key))) {
            throw ConfigError(fmt::format("'{}' does not apply to {}", key, command));
        }
    }
}

int cmd_solve(const RunConfig& config, std::ostream& out) {
    reject_for(config, "solve", {"svg"});
    RunConfig c = config;
    Metadata extra;
    if (c.auto_converge) {
        ConvergenceOptions conv = c.sweep_options().convergence;
        const auto cutoff = converge_cutoff(c.params, conv, c.steady_state_options());
        c.params.fock_cutoff = cutoff.fock_cutoff;
        if (!cutoff.converged) extra.emplace_back("cutoff_converged", "false");
    }
    const PointResult r = c.via_time_evolution
                              ? evolve_point(c.params, c.t_final, c.integrator_options())
                              : solve_point(c.params, c.steady_state_options());
    Metadata meta = run_metadata("solve", c);
    meta.emplace_back("method", c.via_time_evolution ? "time_evolution" : "steady_state");
    for (auto& kv : extra) meta.push_back(std::move(kv));
    emit(c, out, [&](std::ostream& o) { write_point_csv(o, meta, r); });
    return kExitOk;
}

Plot sweep_plot(const RunConfig& c, const std::vector<SweepRow>& rows) {
    Plot plot;
    plot.title = fmt::format("{} scan", to_string(c.axis));
    plot.x_label = std::string(to_string(c.axis));
    plot.y_label = "<a^dag a>, g2(0), g3(0)";
    plot.log_y = true;
    plot.reference_line = 1.0;
    PlotSeries n{"<n>", "#1f77b4", {}, {}}, g2{"g2", "#2ca02c", {}, {}}, g3{"g3", "#d62728", {}, {}};
    for (const auto& r : rows) {
        const bool ok = r.error.empty();
        for (auto* s : {&n, &g2, &g3}) s->x.push_back(r.axis_value);
        n.y.push_back(ok ? r.mean_n : NAN);
        g2.y.push_back(ok && r.g2 ? *r.g2 : NAN);
        g3.y.push_back(ok && r.g3 ? *r.g3 : NAN);
    }
    plot.series = {n, g2, g3};
    return plot;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
    reject_for(config, "sweep", {"via_time_evolution"});
    if (config.svg && config.output.empty()) throw ConfigError("--svg needs --output");
    const auto rows = run_sweep(config.sweep_spec(), config.sweep_options());
    RunConfig resolved = config;
    for (const auto& r : rows) {
        if (r.error.empty()) {
            resolved.params.fock_cutoff = r.fock_cutoff_used;
            break;
        }
    }
    emit(config, out, [&](std::ostream& o) {
        write_sweep_csv(o, run_metadata("sweep", resolved), rows);
    });
    if (config.svg) {
        const auto path = std::filesystem::path(config.output).replace_extension(".svg");
        std::ofstream file(path, std::ios::binary);
        if (!file) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
        file << render_svg(sweep_plot(resolved, rows));
    }
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
    if (failed * 20 > rows.size()) {
        err << fmt::format("error: {} of {} points failed\n", failed, rows.size());
        return kExitNumericalFailure;
    }
    return kExitOk;
}

int cmd_figure(const RunConfig& config, const std::string& id, std::ostream& out,
               std::ostream& err) {
    const Preset& preset = find_preset(id);
    for (auto key : kPresetKeys) {
        if (config.explicit_keys.count(std::string(key))) {
            throw ConfigError(fmt::format("figure presets fix '{}'; remove it from the config", key));
        }
    }
    reject_for(config, "figure", {"via_time_evolution"});
    const FigureResult result = run_figure(preset, config);
    const auto dir = config.output.empty() ? std::filesystem::path(".")
                                           : std::filesystem::path(config.output);
    for (const auto& path : write_figure(result, dir, config.svg)) out << path.string() << '\n';
    if (result.too_many_failures()) {
        err << fmt::format("error: {} of {} points failed\n", result.failed_points,
                           result.total_points);
        return kExitNumericalFailure;
    }
    return kExitOk;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
    reject_for(config, "spectrum", {"svg", "via_time_evolution", "auto_converge"});
    ManifoldSpectrum spectrum;
    try {
        spectrum = manifold_spectrum(config.params, config.n_exc, config.include_control);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    emit(config, out, [&](std::ostream& o) {
        write_spectrum_csv(o, run_metadata("spectrum", config), spectrum);
    });
    return kExitOk;
}

int cmd_selfcheck(const RunConfig& config, std::ostream& out) {
    SelfcheckOptions options;
    if (config.threads > 0) options.threads = config.threads;
    const auto results = run_selfcheck(options);
    bool ok = true;
    for (const auto& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        ok = ok && r.passed;
    }
    out << (ok ? "selfcheck passed\n" : "selfcheck FAILED\n");
    return ok ? kExitOk : kExitSelfcheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{fmt::format("cqed {}: two ladder atoms in a driven, lossy cavity", tool_version())};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version()));

    Flags flags;
    auto* solve = app.add_subcommand("solve", "steady state of one parameter point");
    auto* sweep = app.add_subcommand("sweep", "one-axis parameter scan");
    auto* figure = app.add_subcommand("figure", "run a figure preset");
    auto* spectrum = app.add_subcommand("spectrum", "dressed states of one excitation manifold");
    auto* selfcheck = app.add_subcommand("selfcheck", "invariant suite");
    for (auto* cmd : {solve, sweep, figure, spectrum, selfcheck}) add_common(cmd, flags);
    figure->add_option("preset", flags.preset, "fig2b, fig2c, fig3a ... fig5c")->required();
    spectrum->add_option("n_exc", flags.n_exc, "excitation number (default: config n_exc)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        const RunConfig config = resolve(flags);
        if (solve->parsed()) return cmd_solve(config, out);
        if (sweep->parsed()) return cmd_sweep(config, out, err);
        if (figure->parsed()) return cmd_figure(config, flags.preset, out, err);
        if (spectrum->parsed()) return cmd_spectrum(config, out);
        return cmd_selfcheck(config, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const SolverError& e) {
        err << "numerical failure (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
}

}  // namespace cqed
