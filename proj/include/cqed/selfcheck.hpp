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

#include <functional>
#include <string>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/model.hpp"
#include "cqed/sweep.hpp"

namespace cqed {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelfcheckOptions {
    /// Generator under test.  A harness can substitute a faulty builder.
    std::function<Liouvillian(const ModelParams&)> build = [](const ModelParams& p) {
        return build_liouvillian(p);
    };
    int threads = 8;  ///< parallel side of the determinism check
};

/// Invariant suite: trace preservation, steady-state invariants, gauge,
/// swap and scale invariance, steady state against time evolution at a
/// point of the fig4b preset, cutoff convergence at a fig2b peak,
/// and byte-identical sweep CSV for one thread against `threads`.
std::vector<CheckResult> run_selfcheck(const SelfcheckOptions& options = {});

/// Steady state of the generator returned by `build`, with photon statistics.
PointResult solve_with(const std::function<Liouvillian(const ModelParams&)>& build,
                       const ModelParams& params, const SteadyStateOptions& options = {});

/// Largest relative difference of mean_n, g2 and g3; infinite when one side
/// is defined and the other is not.
double stats_distance(const PhotonStats& a, const PhotonStats& b);

}  // namespace cqed
