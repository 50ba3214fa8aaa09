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

#include "cqed/model.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cqed {

ModelParams ModelParams::scaled(double s) const {
    ModelParams p = *this;
    p.g1 *= s;
    p.g2 *= s;
    p.omega_p *= s;
    p.omega_c *= s;
    p.delta_p *= s;
    p.delta_c *= s;
    p.kappa *= s;
    p.gamma_m *= s;
    p.gamma_e *= s;
    p.cavity_offset *= s;
    return p;
}

void ModelParams::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"g1", g1},           {"g2", g2},           {"omega_p", omega_p},
        {"omega_c", omega_c}, {"delta_p", delta_p}, {"delta_c", delta_c},
        {"kappa", kappa},     {"gamma_m", gamma_m}, {"gamma_e", gamma_e},
        {"cavity_offset", cavity_offset},
    };
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value)) {
            throw std::invalid_argument(fmt::format("{} must be finite", name));
        }
    }
    if (kappa <= 0.0) throw std::invalid_argument("kappa must be > 0");
    if (gamma_m < 0.0) throw std::invalid_argument("gamma_m must be >= 0");
    if (gamma_e < 0.0) throw std::invalid_argument("gamma_e must be >= 0");
    if (fock_cutoff < 2) {
        throw std::invalid_argument(
            fmt::format("fock_cutoff must be >= 2, got {}", fock_cutoff));
    }
}

ModelParams reference_params() {
    ModelParams p;
    p.g1 = 20.0;
    p.g2 = 20.0;
    p.omega_p = 0.2;
    p.delta_c = std::sqrt(2.0) * 20.0;
    p.kappa = 1.0;
    p.gamma_m = 1.0;
    p.gamma_e = 0.01;
    return p;
}

Operator build_hamiltonian(const ModelParams& params, const HilbertSpace& space) {
    params.validate();
    if (space.fock_cutoff() != params.fock_cutoff) {
        throw std::invalid_argument("Hilbert space cutoff does not match the parameters");
    }
    const int dim = space.total_dim();
    const Operator a = annihilation(space);

    Operator h = params.delta_cavity() * number(space);
    const double couplings[] = {params.g1, params.g2};
    for (int j = 1; j <= kAtoms; ++j) {
        const Operator s_mm = atomic_operator(space, j, Level::m, Level::m);
        const Operator s_ee = atomic_operator(space, j, Level::e, Level::e);
        const Operator s_mg = atomic_operator(space, j, Level::m, Level::g);
        const Operator s_em = atomic_operator(space, j, Level::e, Level::m);

        Operator raising = couplings[j - 1] * (a * s_mg) + params.omega_p * s_mg +
                           params.omega_c * s_em;
        h += params.delta_m() * s_mm + params.delta_e() * s_ee;
        h += raising + raising.adjoint();
    }
    if (h.dim() != dim) throw std::logic_error("Hamiltonian dimension mismatch");
    return h;
}

Operator build_hamiltonian(const ModelParams& params) {
    return build_hamiltonian(params, params.space());
}

std::vector<Operator> collapse_operators(const ModelParams& params, const HilbertSpace& space) {
    params.validate();
    std::vector<Operator> jumps;
    jumps.push_back(std::sqrt(params.kappa) * annihilation(space));
    if (params.gamma_e > 0.0) {
        for (int j = 1; j <= kAtoms; ++j) {
            jumps.push_back(std::sqrt(params.gamma_e) * atomic_operator(space, j, Level::m, Level::e));
        }
    }
    if (params.gamma_m > 0.0) {
        for (int j = 1; j <= kAtoms; ++j) {
            jumps.push_back(std::sqrt(params.gamma_m) * atomic_operator(space, j, Level::g, Level::m));
        }
    }
    return jumps;
}

std::vector<Operator> collapse_operators(const ModelParams& params) {
    return collapse_operators(params, params.space());
}

std::optional<Operator> exchange_symmetry(const ModelParams& params, const HilbertSpace& space) {
    if (params.g1 == params.g2) return atom_swap(space);
    if (params.g1 == -params.g2) return photon_parity(space) * atom_swap(space);
    return std::nullopt;
}

Operator excitation_number(const HilbertSpace& space) {
    Operator n = number(space);
    for (int j = 1; j <= kAtoms; ++j) {
        n += atomic_operator(space, j, Level::m, Level::m);
        n += atomic_operator(space, j, Level::e, Level::e);
    }
    return n;
}

}  // namespace cqed
