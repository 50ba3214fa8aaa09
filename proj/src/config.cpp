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

#include "cqed/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace cqed {

namespace {

using json = nlohmann::json;

double as_number(const json& v, std::string_view key) {
    if (!v.is_number()) throw ConfigError(fmt::format("'{}' must be a number", key));
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(fmt::format("'{}' must be finite", key));
    return x;
}

int as_int(const json& v, std::string_view key) {
    if (v.is_number_integer()) {
        const auto x = v.get<long long>();
        if (x < -1'000'000'000LL || x > 1'000'000'000LL) {
            throw ConfigError(fmt::format("'{}' is out of range", key));
        }
        return static_cast<int>(x);
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) <= 1e9) return static_cast<int>(x);
    }
    throw ConfigError(fmt::format("'{}' must be an integer", key));
}

bool as_bool(const json& v, std::string_view key) {
    if (!v.is_boolean()) throw ConfigError(fmt::format("'{}' must be true or false", key));
    return v.get<bool>();
}

std::string as_string(const json& v, std::string_view key) {
    if (!v.is_string()) throw ConfigError(fmt::format("'{}' must be a string", key));
    return v.get<std::string>();
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Field {
    std::string_view key;
    std::function<void(RunConfig&, const json&)> read;
    std::function<std::string(const RunConfig&)> write;  // empty: not described
};

template <typename Member>
Field number_field(std::string_view key, Member member) {
    return {key, [=](RunConfig& c, const json& v) { std::invoke(member, c) = as_number(v, key); },
            [=](const RunConfig& c) { return format_number(std::invoke(member, c)); }};
}

template <typename Member>
Field int_field(std::string_view key, Member member) {
    return {key, [=](RunConfig& c, const json& v) { std::invoke(member, c) = as_int(v, key); },
            [=](const RunConfig& c) { return std::to_string(std::invoke(member, c)); }};
}

template <typename Member>
Field bool_field(std::string_view key, Member member) {
    return {key, [=](RunConfig& c, const json& v) { std::invoke(member, c) = as_bool(v, key); },
            [=](const RunConfig& c) { return bool_text(std::invoke(member, c)); }};
}

// Accessors into the nested ModelParams.
#define CQED_PARAM(name) [](auto& c) -> auto& { return c.params.name; }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = {
        number_field("g1", CQED_PARAM(g1)),
        number_field("g2", CQED_PARAM(g2)),
        number_field("omega_p", CQED_PARAM(omega_p)),
        number_field("omega_c", CQED_PARAM(omega_c)),
        number_field("delta_p", CQED_PARAM(delta_p)),
        number_field("delta_c", CQED_PARAM(delta_c)),
        number_field("kappa", CQED_PARAM(kappa)),
        number_field("gamma_m", CQED_PARAM(gamma_m)),
        number_field("gamma_e", CQED_PARAM(gamma_e)),
        number_field("cavity_offset", CQED_PARAM(cavity_offset)),
        int_field("fock_cutoff", CQED_PARAM(fock_cutoff)),
        {"axis",
         [](RunConfig& c, const json& v) {
             try {
                 c.axis = parse_axis(as_string(v, "axis"));
             } catch (const std::invalid_argument& e) {
                 throw ConfigError(e.what());
             }
         },
         [](const RunConfig& c) { return std::string(to_string(c.axis)); }},
        number_field("start", &RunConfig::start),
        number_field("stop", &RunConfig::stop),
        int_field("points", &RunConfig::points),
        bool_field("auto_converge", &RunConfig::auto_converge),
        {"output", [](RunConfig& c, const json& v) { c.output = as_string(v, "output"); }, {}},
        {"svg", [](RunConfig& c, const json& v) { c.svg = as_bool(v, "svg"); }, {}},
        {"threads", [](RunConfig& c, const json& v) { c.threads = as_int(v, "threads"); }, {}},
        number_field("residual_tol", &RunConfig::residual_tol),
        number_field("rtol", &RunConfig::rtol),
        number_field("atol", &RunConfig::atol),
        number_field("t_final", &RunConfig::t_final),
        bool_field("via_time_evolution", &RunConfig::via_time_evolution),
        number_field("convergence_rel_tol", &RunConfig::convergence_rel_tol),
        int_field("max_cutoff", &RunConfig::max_cutoff),
        int_field("n_exc", &RunConfig::n_exc),
        bool_field("include_control", &RunConfig::include_control),
    };
    return table;
}

#undef CQED_PARAM

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", value);
}

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> out;
        for (const auto& f : fields()) out.push_back(f.key);
        return out;
    }();
    return keys;
}

SweepSpec RunConfig::sweep_spec() const {
    SweepSpec s;
    s.base = params;
    s.axis = axis;
    s.start = start;
    s.stop = stop;
    s.points = points;
    s.auto_converge = auto_converge;
    return s;
}

SteadyStateOptions RunConfig::steady_state_options() const {
    SteadyStateOptions o;
    o.residual_tol = residual_tol;
    return o;
}

IntegratorOptions RunConfig::integrator_options() const {
    IntegratorOptions o;
    o.rtol = rtol;
    o.atol = atol;
    return o;
}

SweepOptions RunConfig::sweep_options() const {
    SweepOptions o;
    o.threads = threads;
    o.solver = steady_state_options();
    o.convergence.rel_tol = convergence_rel_tol;
    o.convergence.max_cutoff = max_cutoff;
    return o;
}

void RunConfig::validate() const {
    try {
        params.validate();
        sweep_spec().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    auto positive = [](double x, std::string_view key) {
        if (!(x > 0.0)) throw ConfigError(fmt::format("'{}' must be > 0", key));
    };
    positive(residual_tol, "residual_tol");
    positive(rtol, "rtol");
    positive(atol, "atol");
    positive(t_final, "t_final");
    positive(convergence_rel_tol, "convergence_rel_tol");
    if (threads < 0) throw ConfigError("'threads' must be >= 0");
    if (max_cutoff < 3) throw ConfigError("'max_cutoff' must be >= 3");
    if (n_exc < 0) throw ConfigError("'n_exc' must be >= 0");
}

RunConfig parse_config(std::string_view json_text, RunConfig base) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    std::map<std::string_view, const Field*> by_key;
    for (const auto& f : fields()) by_key.emplace(f.key, &f);
    for (const auto& [key, value] : doc.items()) {
        const auto it = by_key.find(key);
        if (it == by_key.end()) throw ConfigError(fmt::format("unknown config key '{}'", key));
        it->second->read(base, value);
        base.explicit_keys.insert(key);
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), std::move(base));
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields()) {
        if (f.write) out.emplace_back(std::string(f.key), f.write(config));
    }
    return out;
}

}  // namespace cqed
