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
#include <span>
#include <string>
#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/model.hpp"

namespace cqed {

/// Equal-time photon statistics of a cavity state.
///
/// g2 and g3 are empty when mean_n falls below the threshold: a state with no
/// light has no defined correlation function.  g3 is also empty when the
/// cutoff is below 3, since the three-photon moment is identically zero there.
struct PhotonStats {
    double mean_n = 0.0;
    std::optional<double> g2;
    std::optional<double> g3;

    // Unnormalized factorial moments <a^dag^k a^k>.
    double second_moment = 0.0;
    double third_moment = 0.0;
};

inline constexpr double kDefinedThreshold = 1e-10;

PhotonStats photon_stats(const DensityMatrix& rho, const HilbertSpace& space,
                         double defined_threshold = kDefinedThreshold);

/// Overlap of an eigenvector with one named collective state.
struct CollectiveOverlap {
    std::string label;   // e.g. "Mg+,1"
    double probability;  // |<label|psi>|^2
};

struct DressedState {
    double energy = 0.0;
    Ket vector;
    /// |<gg, n_exc|psi>|^2: weight of the bare photon state of the manifold.
    double bright_weight = 0.0;
    /// True when the state is reachable from |gg, n_exc> by the Hamiltonian,
    /// i.e. it carries nonzero bright_weight.
    bool cavity_coupled = false;
    std::vector<CollectiveOverlap> overlaps;  // nonzero overlaps, largest first
};

/// Eigenpairs of the drive-free Hamiltonian restricted to one excitation
/// manifold, energies ascending.
struct ManifoldSpectrum {
    int n_exc = 0;
    std::vector<DressedState> states;

    std::vector<double> energies() const;
    std::vector<double> cavity_coupled_energies() const;
};

/// Diagonalizes H (pump off, control on iff include_control) in the block
/// with a^dag a + sum_j (S^j_mm + S^j_ee) = n_exc.  Inside each degenerate
/// eigenspace the basis is rotated so that at most one vector overlaps
/// |gg, n_exc>.  Throws std::invalid_argument if n_exc < 0 or n_exc > N_c.
ManifoldSpectrum manifold_spectrum(const ModelParams& params, int n_exc, bool include_control);

/// Collective two-atom basis state |label, photons> as a ket:
/// gg, Mg+, Mg-, EG+, EG-, mm, EM+, EM-, ee.
Ket collective_ket(const HilbertSpace& space, const std::string& atoms, int photons);

struct Peak {
    std::size_t index;
    double position;
    double height;
};

/// Interior strict local maxima of `values`; plateaus are reported once at
/// their smallest axis value.  Requires >= 3 points with ascending axis.
std::vector<Peak> peak_structure(std::span<const double> axis, std::span<const double> values);

}  // namespace cqed
