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

#include "cqed/hilbert.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cqed {

namespace {

using Triplet = Eigen::Triplet<Complex>;

Operator from_triplets(int dim, const std::vector<Triplet>& triplets) {
    SparseMatrix m(dim, dim);
    m.setFromTriplets(triplets.begin(), triplets.end());
    return Operator(std::move(m));
}

void check_atom(int atom) {
    if (atom != 1 && atom != 2) {
        throw std::invalid_argument(fmt::format("atom index must be 1 or 2, got {}", atom));
    }
}

void check_level(Level level) {
    const int v = static_cast<int>(level);
    if (v < 0 || v >= kAtomLevels) {
        throw std::invalid_argument(fmt::format("invalid atomic level {}", v));
    }
}

}  // namespace

char level_name(Level level) {
    switch (level) {
        case Level::g: return 'g';
        case Level::m: return 'm';
        case Level::e: return 'e';
    }
    throw std::invalid_argument("invalid atomic level");
}

Level parse_level(char c) {
    switch (c) {
        case 'g': return Level::g;
        case 'm': return Level::m;
        case 'e': return Level::e;
        default: throw std::invalid_argument(fmt::format("unknown atomic level '{}'", c));
    }
}

HilbertSpace::HilbertSpace(int fock_cutoff) : fock_cutoff_(fock_cutoff) {
    if (fock_cutoff < 0) {
        throw std::invalid_argument(fmt::format("Fock cutoff must be >= 0, got {}", fock_cutoff));
    }
}

int HilbertSpace::index(Level atom1, Level atom2, int photons) const {
    check_level(atom1);
    check_level(atom2);
    if (photons < 0 || photons > fock_cutoff_) {
        throw std::out_of_range(
            fmt::format("photon number {} outside [0, {}]", photons, fock_cutoff_));
    }
    return (static_cast<int>(atom1) * kAtomLevels + static_cast<int>(atom2)) * fock_dim() +
           photons;
}

BasisState HilbertSpace::state(int index) const {
    if (index < 0 || index >= total_dim()) {
        throw std::out_of_range(fmt::format("basis index {} outside [0, {})", index, total_dim()));
    }
    const int atoms = index / fock_dim();
    return {static_cast<Level>(atoms / kAtomLevels), static_cast<Level>(atoms % kAtomLevels),
            index % fock_dim()};
}

std::string HilbertSpace::label(int index) const {
    const auto s = state(index);
    return fmt::format("|{}{},{}>", level_name(s.atom1), level_name(s.atom2), s.photons);
}

Operator::Operator(SparseMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw std::invalid_argument("operator matrix must be square");
    }
    drop_zeros();
}

Operator Operator::zero(int dim) { return Operator(SparseMatrix(dim, dim)); }

Operator Operator::identity(int dim) {
    SparseMatrix m(dim, dim);
    m.setIdentity();
    return Operator(std::move(m));
}

std::vector<Triplet> Operator::entries() const {
    std::vector<Triplet> out;
    out.reserve(static_cast<std::size_t>(m_.nonZeros()));
    for (int k = 0; k < m_.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(m_, k); it; ++it) {
            out.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
        }
    }
    return out;
}

Operator Operator::adjoint() const { return Operator(SparseMatrix(m_.adjoint())); }

Ket Operator::apply(const Ket& psi) const {
    if (psi.size() != dim()) {
        throw std::invalid_argument(
            fmt::format("ket dimension {} does not match operator dimension {}", psi.size(), dim()));
    }
    return m_ * psi;
}

Operator& Operator::operator+=(const Operator& rhs) {
    require_same_dim(rhs);
    m_ += rhs.m_;
    drop_zeros();
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    require_same_dim(rhs);
    m_ -= rhs.m_;
    drop_zeros();
    return *this;
}

Operator& Operator::operator*=(Complex s) {
    m_ *= s;
    drop_zeros();
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
    lhs.require_same_dim(rhs);
    return Operator(SparseMatrix(lhs.m_ * rhs.m_));
}

void Operator::require_same_dim(const Operator& rhs) const {
    if (dim() != rhs.dim()) {
        throw std::invalid_argument(
            fmt::format("operator dimension mismatch: {} vs {}", dim(), rhs.dim()));
    }
}

void Operator::drop_zeros() {
    m_.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex(0.0); });
    m_.makeCompressed();
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

Operator annihilation(const HilbertSpace& space) {
    if (space.fock_cutoff() < 1) {
        throw std::invalid_argument("annihilation operator needs a Fock cutoff of at least 1");
    }
    DenseMatrix local = DenseMatrix::Zero(space.fock_dim(), space.fock_dim());
    for (int n = 1; n <= space.fock_cutoff(); ++n) {
        local(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return embed_cavity(space, local);
}

Operator creation(const HilbertSpace& space) { return annihilation(space).adjoint(); }

Operator number(const HilbertSpace& space) {
    DenseMatrix local = DenseMatrix::Zero(space.fock_dim(), space.fock_dim());
    for (int n = 0; n <= space.fock_cutoff(); ++n) local(n, n) = static_cast<double>(n);
    return embed_cavity(space, local);
}

Operator atomic_operator(const HilbertSpace& space, int atom, Level alpha, Level beta) {
    check_atom(atom);
    check_level(alpha);
    check_level(beta);
    DenseMatrix local = DenseMatrix::Zero(kAtomLevels, kAtomLevels);
    local(static_cast<int>(alpha), static_cast<int>(beta)) = 1.0;
    return embed_atom(space, atom, local);
}

Operator embed_atom(const HilbertSpace& space, int atom, const DenseMatrix& local) {
    check_atom(atom);
    if (local.rows() != kAtomLevels || local.cols() != kAtomLevels) {
        throw std::invalid_argument("single-atom operator must be 3x3");
    }
    std::vector<Triplet> triplets;
    for (int r = 0; r < kAtomLevels; ++r) {
        for (int c = 0; c < kAtomLevels; ++c) {
            const Complex v = local(r, c);
            if (v == Complex(0.0)) continue;
            for (int other = 0; other < kAtomLevels; ++other) {
                for (int n = 0; n <= space.fock_cutoff(); ++n) {
                    const auto o = static_cast<Level>(other);
                    const auto lr = static_cast<Level>(r);
                    const auto lc = static_cast<Level>(c);
                    const int row = atom == 1 ? space.index(lr, o, n) : space.index(o, lr, n);
                    const int col = atom == 1 ? space.index(lc, o, n) : space.index(o, lc, n);
                    triplets.emplace_back(row, col, v);
                }
            }
        }
    }
    return from_triplets(space.total_dim(), triplets);
}

Operator embed_cavity(const HilbertSpace& space, const DenseMatrix& local) {
    if (local.rows() != space.fock_dim() || local.cols() != space.fock_dim()) {
        throw std::invalid_argument("cavity operator must be (N_c+1)x(N_c+1)");
    }
    std::vector<Triplet> triplets;
    for (int r = 0; r < space.fock_dim(); ++r) {
        for (int c = 0; c < space.fock_dim(); ++c) {
            const Complex v = local(r, c);
            if (v == Complex(0.0)) continue;
            for (int atoms = 0; atoms < kAtomLevels * kAtomLevels; ++atoms) {
                const int offset = atoms * space.fock_dim();
                triplets.emplace_back(offset + r, offset + c, v);
            }
        }
    }
    return from_triplets(space.total_dim(), triplets);
}

Operator atom_swap(const HilbertSpace& space) {
    std::vector<Triplet> triplets;
    for (int i = 0; i < space.total_dim(); ++i) {
        const auto s = space.state(i);
        triplets.emplace_back(space.index(s.atom2, s.atom1, s.photons), i, 1.0);
    }
    return from_triplets(space.total_dim(), triplets);
}

Operator photon_parity(const HilbertSpace& space) {
    std::vector<Triplet> triplets;
    for (int i = 0; i < space.total_dim(); ++i) {
        triplets.emplace_back(i, i, space.state(i).photons % 2 == 0 ? 1.0 : -1.0);
    }
    return from_triplets(space.total_dim(), triplets);
}

Ket basis_ket(const HilbertSpace& space, Level atom1, Level atom2, int photons) {
    Ket psi = Ket::Zero(space.total_dim());
    psi(space.index(atom1, atom2, photons)) = 1.0;
    return psi;
}

}  // namespace cqed
