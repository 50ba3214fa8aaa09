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

#include "cqed/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace cqed {

namespace {

struct CollectiveSpec {
    const char* name;
    int excitations;
};

constexpr CollectiveSpec kCollective[] = {
    {"gg", 0},  {"Mg+", 1}, {"Mg-", 1}, {"EG+", 1}, {"EG-", 1},
    {"mm", 2},  {"EM+", 2}, {"EM-", 2}, {"ee", 2},
};

// Fixes the global phase so the largest component is real and positive.
void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (std::abs(v(imax)) > 0.0) v *= std::conj(v(imax)) / std::abs(v(imax));
}

}  // namespace

PhotonStats photon_stats(const DensityMatrix& rho, const HilbertSpace& space,
                         double defined_threshold) {
    if (rho.dim() != space.total_dim()) {
        throw std::invalid_argument("state dimension does not match the Hilbert space");
    }
    const Operator a = annihilation(space);
    const Operator ad = a.adjoint();
    const Operator n1 = ad * a;
    const Operator n2 = ad * n1 * a;
    const Operator n3 = ad * n2 * a;

    PhotonStats s;
    s.mean_n = rho.expectation(n1).real();
    s.second_moment = rho.expectation(n2).real();
    s.third_moment = rho.expectation(n3).real();
    if (s.mean_n >= defined_threshold) {
        s.g2 = s.second_moment / (s.mean_n * s.mean_n);
        if (space.fock_cutoff() >= 3) s.g3 = s.third_moment / (s.mean_n * s.mean_n * s.mean_n);
    }
    return s;
}

std::vector<double> ManifoldSpectrum::energies() const {
    std::vector<double> out;
    for (const auto& s : states) out.push_back(s.energy);
    return out;
}

std::vector<double> ManifoldSpectrum::cavity_coupled_energies() const {
    std::vector<double> out;
    for (const auto& s : states) {
        if (s.cavity_coupled) out.push_back(s.energy);
    }
    return out;
}

Ket collective_ket(const HilbertSpace& space, const std::string& atoms, int photons) {
    const double r = 1.0 / std::sqrt(2.0);
    auto pair = [&](Level x, Level y, double sign) {
        return Ket(r * (basis_ket(space, x, y, photons) + sign * basis_ket(space, y, x, photons)));
    };
    if (atoms == "gg") return basis_ket(space, Level::g, Level::g, photons);
    if (atoms == "mm") return basis_ket(space, Level::m, Level::m, photons);
    if (atoms == "ee") return basis_ket(space, Level::e, Level::e, photons);
    if (atoms == "Mg+") return pair(Level::m, Level::g, 1.0);
    if (atoms == "Mg-") return pair(Level::m, Level::g, -1.0);
    if (atoms == "EG+") return pair(Level::e, Level::g, 1.0);
    if (atoms == "EG-") return pair(Level::e, Level::g, -1.0);
    if (atoms == "EM+") return pair(Level::e, Level::m, 1.0);
    if (atoms == "EM-") return pair(Level::e, Level::m, -1.0);
    throw std::invalid_argument(fmt::format("unknown collective state '{}'", atoms));
}

ManifoldSpectrum manifold_spectrum(const ModelParams& params, int n_exc, bool include_control) {
    if (n_exc < 0) throw std::invalid_argument("n_exc must be >= 0");
    if (n_exc > params.fock_cutoff) {
        throw std::invalid_argument(fmt::format(
            "n_exc = {} is not representable with fock_cutoff = {}", n_exc, params.fock_cutoff));
    }
    ModelParams p = params;
    p.omega_p = 0.0;
    if (!include_control) p.omega_c = 0.0;
    const HilbertSpace space = p.space();
    const DenseMatrix h = build_hamiltonian(p, space).dense();
    const Operator n_op = excitation_number(space);

    std::vector<int> block;
    for (int i = 0; i < space.total_dim(); ++i) {
        if (std::lround(n_op.coeff(i, i).real()) == n_exc) block.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(block.size());
    DenseMatrix hb(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) hb(r, c) = h(block[r], block[c]);
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hb);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("manifold diagonalization failed");
    }
    const Eigen::VectorXd& evals = es.eigenvalues();
    DenseMatrix evecs = es.eigenvectors();

    const int bright_index = static_cast<int>(
        std::find(block.begin(), block.end(), space.index(Level::g, Level::g, n_exc)) -
        block.begin());
    const double scale = std::max(1.0, hb.cwiseAbs().maxCoeff());
    const double degeneracy_tol = 1e-9 * scale;

    // Rotate each degenerate cluster so only its first vector overlaps the
    // bright state |gg, n_exc>.
    for (Eigen::Index start = 0; start < m;) {
        Eigen::Index end = start + 1;
        while (end < m && evals(end) - evals(end - 1) < degeneracy_tol) ++end;
        const Eigen::Index size = end - start;
        if (size > 1) {
            auto cluster = evecs.middleCols(start, size);
            const Eigen::VectorXcd proj = cluster.row(bright_index).adjoint();  // <v_k|b>^*
            if (proj.norm() > 1e-14) {
                // First column of Q is proj / |proj| up to a phase.
                const Eigen::HouseholderQR<DenseMatrix> qr{DenseMatrix(proj)};
                const DenseMatrix q = qr.householderQ();
                cluster = DenseMatrix(cluster * q);
            }
        }
        start = end;
    }

    ManifoldSpectrum out;
    out.n_exc = n_exc;
    for (Eigen::Index k = 0; k < m; ++k) {
        Eigen::VectorXcd v = evecs.col(k);
        fix_phase(v);
        DressedState s;
        s.energy = evals(k);
        s.vector = Ket::Zero(space.total_dim());
        for (Eigen::Index r = 0; r < m; ++r) s.vector(block[r]) = v(r);
        s.bright_weight = std::norm(v(bright_index));
        s.cavity_coupled = s.bright_weight > 1e-20;
        for (const auto& c : kCollective) {
            const int photons = n_exc - c.excitations;
            if (photons < 0) continue;
            const double prob = std::norm(collective_ket(space, c.name, photons).dot(s.vector));
            if (prob > 1e-24) s.overlaps.push_back({fmt::format("{},{}", c.name, photons), prob});
        }
        std::stable_sort(s.overlaps.begin(), s.overlaps.end(),
                         [](const auto& a, const auto& b) { return a.probability > b.probability; });
        out.states.push_back(std::move(s));
    }
    return out;
}

std::vector<Peak> peak_structure(std::span<const double> axis, std::span<const double> values) {
    if (axis.size() != values.size()) {
        throw std::invalid_argument("axis and values must have the same length");
    }
    if (values.size() < 3) throw std::invalid_argument("peak search needs at least 3 points");
    for (std::size_t i = 1; i < axis.size(); ++i) {
        if (!(axis[i] > axis[i - 1])) throw std::invalid_argument("axis must be ascending");
    }
    std::vector<Peak> peaks;
    std::size_t i = 1;
    while (i + 1 < values.size()) {
        if (values[i] > values[i - 1]) {
            std::size_t j = i;
            while (j + 1 < values.size() && values[j + 1] == values[i]) ++j;
            if (j + 1 < values.size() && values[j + 1] < values[i]) {
                peaks.push_back({i, axis[i], values[i]});
            }
            i = j + 1;
        } else {
            ++i;
        }
    }
    return peaks;
}

}  // namespace cqed
