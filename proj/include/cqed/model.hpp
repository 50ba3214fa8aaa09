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
#include <vector>

#include "cqed/hilbert.hpp"

namespace cqed {

/// Physical parameters of the driven two-atom ladder system.
///
/// All rates and detunings are in units of the cavity decay rate, with
/// hbar = 1.  The cavity is resonant with the g-m transition, so the cavity
/// and m-level detunings both equal delta_p; cavity_offset adds an extra
/// cavity detuning for off-resonant diagnostics and is 0 in every preset.
struct ModelParams {
    double g1 = 0.0;
    double g2 = 0.0;
    double omega_p = 0.0;
    double omega_c = 0.0;
    double delta_p = 0.0;
    double delta_c = 0.0;
    double kappa = 1.0;
    double gamma_m = 0.0;
    double gamma_e = 0.0;
    double cavity_offset = 0.0;
    int fock_cutoff = 6;

    double delta_cavity() const { return delta_p + cavity_offset; }
    double delta_m() const { return delta_p; }
    double delta_e() const { return delta_p + delta_c; }

    /// Multiplies every rate and detuning by s (the cutoff is unchanged).
    ModelParams scaled(double s) const;

    /// Throws std::invalid_argument on non-finite values, kappa <= 0,
    /// negative atomic decay rates or a cutoff below 2.
    void validate() const;

    HilbertSpace space() const { return HilbertSpace(fock_cutoff); }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Reference point used by the equal-coupling figures: g = 20, pump 0.2,
/// delta_c = sqrt(2) g, gamma_m = 1, gamma_e = 1/100.
ModelParams reference_params();

/// Rotating-frame Hamiltonian
///
///   H = sum_j (D_m S^j_mm + D_e S^j_ee) + D_cav a^dag a
///     + sum_j (g_j a S^j_mg + Omega_P S^j_mg + Omega_C S^j_em + h.c.)
Operator build_hamiltonian(const ModelParams& params, const HilbertSpace& space);
Operator build_hamiltonian(const ModelParams& params);

/// Jump operators in the order sqrt(kappa) a, sqrt(gamma_e) S^1_me,
/// sqrt(gamma_e) S^2_me, sqrt(gamma_m) S^1_gm, sqrt(gamma_m) S^2_gm.
/// Channels with a zero rate are omitted.
std::vector<Operator> collapse_operators(const ModelParams& params, const HilbertSpace& space);
std::vector<Operator> collapse_operators(const ModelParams& params);

/// Signed-permutation unitary U with U H U^dag = H that maps the set of jump
/// operators onto itself up to signs: the atom swap when g1 = g2, the swap
/// followed by the photon parity when g1 = -g2, nothing otherwise.
std::optional<Operator> exchange_symmetry(const ModelParams& params, const HilbertSpace& space);

/// Total excitation number a^dag a + sum_j (S^j_mm + S^j_ee).  Conserved by H
/// when the pump is off.
Operator excitation_number(const HilbertSpace& space);

}  // namespace cqed
