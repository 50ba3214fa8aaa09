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

#include <filesystem>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/model.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

/// Bad configuration: malformed JSON, unknown key, wrong type or an
/// out-of-range value.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Everything a CLI run needs.  All rates and detunings are in units of the
/// cavity decay rate kappa.  Physical fields default to reference_params().
struct RunConfig {
    ModelParams params = reference_params();

    // sweep
    Axis axis = Axis::delta_p;
    double start = -60.0;
    double stop = 60.0;
    int points = 241;
    bool auto_converge = false;

    // output and execution
    std::string output;  ///< empty: stdout (solve, sweep, spectrum) or "." (figure)
    bool svg = false;
    int threads = 0;     ///< 0: hardware concurrency

    // solvers
    double residual_tol = 1e-10;
    double rtol = 1e-8;
    double atol = 1e-14;
    double t_final = 100.0;
    bool via_time_evolution = false;
    double convergence_rel_tol = 1e-6;
    int max_cutoff = 14;

    // spectrum
    int n_exc = 1;
    bool include_control = true;

    /// Keys set by a config file or a command-line flag.
    std::set<std::string> explicit_keys;

    SweepSpec sweep_spec() const;
    SweepOptions sweep_options() const;
    SteadyStateOptions steady_state_options() const;
    IntegratorOptions integrator_options() const;

    /// Throws ConfigError when any field is out of range.
    void validate() const;
};

/// Recognized configuration keys, in serialization order.
const std::vector<std::string_view>& config_keys();

/// Applies the keys of a flat JSON object on top of `base`.  Rejects
/// unknown keys, non-object documents and values of the wrong type.
RunConfig parse_config(std::string_view json_text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Every key with its value as text, in config_keys() order.  The
/// execution-only keys output, svg and threads are omitted.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

/// Lossless text form used in all output: 17 significant digits,
/// "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double value);

}  // namespace cqed
