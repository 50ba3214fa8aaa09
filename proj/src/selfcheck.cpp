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

#include "cqed/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "cqed/config.hpp"
#include "cqed/observables.hpp"
#include "cqed/report.hpp"

namespace cqed {

namespace {

ModelParams random_params(std::mt19937& rng, int cutoff) {
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    std::uniform_real_distribution<double> rate(0.2, 3.0);
    ModelParams p;
    p.g1 = u(rng);
    p.g2 = u(rng);
    p.omega_p = u(rng) / 10;
    p.omega_c = u(rng) / 3;
    p.delta_p = u(rng);
    p.delta_c = u(rng);
    p.kappa = rate(rng);
    p.gamma_m = rate(rng);
    p.gamma_e = rate(rng);
    p.fock_cutoff = cutoff;
    return p;
}

double relative(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Runs `body`, turning exceptions into a failed check.
template <typename Body>
CheckResult guarded(std::string name, Body body) {
    CheckResult r{std::move(name), false, {}};
    try {
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = fmt::format("exception: {}", e.what());
    }
    return r;
}

CheckResult check_trace_preservation(const SelfcheckOptions& o) {
    return guarded("trace preservation", [&](CheckResult& r) {
        std::mt19937 rng(2026);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            worst = std::max(worst, trace_preservation_error(o.build(random_params(rng, 3))));
        }
        r.passed = worst <= 1e-12;
        r.detail = fmt::format("max |sum_i L[(i,i),k]| = {:.3e} (limit 1e-12)", worst);
    });
}

CheckResult check_steady_state(const SelfcheckOptions& o) {
    return guarded("steady-state invariants", [&](CheckResult& r) {
        std::mt19937 rng(7);
        double trace = 0.0, herm = 0.0, min_eig = 0.0, residual = 0.0;
        for (int i = 0; i < 5; ++i) {
            const Liouvillian l = o.build(random_params(rng, 3));
            SteadyStateOptions opts;
            opts.residual_tol = std::numeric_limits<double>::infinity();
            const SteadyState ss = steady_state(l, opts);
            const auto d = ss.rho.diagnostics();
            trace = std::max(trace, d.trace_error);
            herm = std::max(herm, d.hermiticity_error);
            min_eig = std::min(min_eig, d.min_eigenvalue);
            residual = std::max(residual, ss.residual);
        }
        r.passed = trace <= 1e-10 && herm <= 1e-10 && min_eig >= -1e-8 && residual <= 1e-10;
        r.detail = fmt::format("trace {:.2e}, hermiticity {:.2e}, min eigenvalue {:.2e}, residual {:.2e}",
                               trace, herm, min_eig, residual);
    });
}

CheckResult check_symmetries(const SelfcheckOptions& o) {
    return guarded("gauge, swap and scale invariance", [&](CheckResult& r) {
        std::mt19937 rng(11);
        double gauge = 0.0, swap = 0.0, scale = 0.0;
        for (int i = 0; i < 3; ++i) {
            ModelParams p = random_params(rng, 4);
            p.omega_p /= 3.0;
            const PhotonStats base = solve_with(o.build, p).stats;
            ModelParams q = p;
            q.g1 = -p.g1;
            q.g2 = -p.g2;
            gauge = std::max(gauge, stats_distance(base, solve_with(o.build, q).stats));
            q = p;
            std::swap(q.g1, q.g2);
            swap = std::max(swap, stats_distance(base, solve_with(o.build, q).stats));
            for (double s : {0.5, 2.0}) {
                scale = std::max(scale, stats_distance(base, solve_with(o.build, p.scaled(s)).stats));
            }
        }
        r.passed = gauge <= 1e-9 && swap <= 1e-9 && scale <= 1e-8;
        r.detail = fmt::format("gauge {:.2e}, swap {:.2e} (limit 1e-9), scale {:.2e} (limit 1e-8)",
                               gauge, swap, scale);
    });
}

CheckResult check_oracle(const SelfcheckOptions& o) {
    return guarded("steady state against time evolution", [&](CheckResult& r) {
        ModelParams p = reference_params();
        p.g2 = -p.g1;
        p.omega_p = 2.0;
        p.delta_c = std::sqrt(6.0) * p.g1 / 2.0;
        p.delta_p = -24.5;
        p.fock_cutoff = 6;
        const PointResult ss = solve_with(o.build, p);
        const PointResult ev = evolve_point(p, 100.0);
        const double dn = ss.stats.mean_n < 1e-3 ? std::abs(ss.stats.mean_n - ev.stats.mean_n)
                                                 : relative(ss.stats.mean_n, ev.stats.mean_n);
        const double dg2 = (ss.stats.g2 && ev.stats.g2) ? relative(*ss.stats.g2, *ev.stats.g2)
                                                        : std::numeric_limits<double>::infinity();
        r.passed = dn <= 1e-6 && dg2 <= 1e-6;
        r.detail = fmt::format("mean_n {:.2e}, g2 {:.2e} (limit 1e-6)", dn, dg2);
    });
}

CheckResult check_cutoff(const SelfcheckOptions& o) {
    return guarded("cutoff convergence", [&](CheckResult& r) {
        ModelParams p = reference_params();
        p.delta_p = -std::sqrt(2.0) * p.g1;
        p.fock_cutoff = 6;
        const PhotonStats a = solve_with(o.build, p).stats;
        p.fock_cutoff = 8;
        const PhotonStats b = solve_with(o.build, p).stats;
        const double change = stats_distance(a, b);
        r.passed = change <= 1e-6;
        r.detail = fmt::format("N_c 6 against 8: {:.2e} (limit 1e-6)", change);
    });
}

CheckResult check_determinism(const SelfcheckOptions& o) {
    return guarded("sweep determinism", [&](CheckResult& r) {
        SweepSpec spec;
        spec.base = reference_params();
        spec.base.omega_c = 5.0;
        spec.points = 25;
        auto csv = [&](int threads) {
            SweepOptions opts;
            opts.threads = threads;
            std::ostringstream out;
            write_sweep_csv(out, {{"check", "determinism"}}, run_sweep(spec, opts));
            return out.str();
        };
        const std::string serial = csv(1);
        const std::string again = csv(1);
        const std::string parallel = csv(o.threads);
        r.passed = serial == again && serial == parallel;
        r.detail = fmt::format("25-point scan, 1 vs 1 thread {}, 1 vs {} threads {}",
                               serial == again ? "identical" : "different", o.threads,
                               serial == parallel ? "identical" : "different");
    });
}

}  // namespace

PointResult solve_with(const std::function<Liouvillian(const ModelParams&)>& build,
                       const ModelParams& params, const SteadyStateOptions& options) {
    const SteadyState ss = steady_state(build(params), options);
    return {photon_stats(ss.rho, params.space()), ss.residual, params.fock_cutoff};
}

double stats_distance(const PhotonStats& a, const PhotonStats& b) {
    double worst = relative(a.mean_n, b.mean_n);
    for (auto [x, y] : {std::pair{a.g2, b.g2}, std::pair{a.g3, b.g3}}) {
        if (x.has_value() != y.has_value()) return std::numeric_limits<double>::infinity();
        if (x) worst = std::max(worst, relative(*x, *y));
    }
    return worst;
}

std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options) {
    return {
        check_trace_preservation(options),
        check_steady_state(options),
        check_symmetries(options),
        check_oracle(options),
        check_cutoff(options),
        check_determinism(options),
    };
}

}  // namespace cqed
