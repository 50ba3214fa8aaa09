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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cqed {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

/// Atomic level of a three-level ladder atom, ordered by energy.
enum class Level : int { g = 0, m = 1, e = 2 };

inline constexpr int kAtomLevels = 3;
inline constexpr int kAtoms = 2;

char level_name(Level level);
Level parse_level(char c);

/// Label of one product basis state |s1, s2, n>.
struct BasisState {
    Level atom1 = Level::g;
    Level atom2 = Level::g;
    int photons = 0;

    friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Truncated composite space atom1 (x) atom2 (x) cavity.
///
/// Basis indices are row-major over that factor order:
///
///     index = (s1 * 3 + s2) * (N_c + 1) + n
///
/// so the photon number runs fastest.  N_c is the largest photon number kept.
class HilbertSpace {
public:
    explicit HilbertSpace(int fock_cutoff);

    int fock_cutoff() const { return fock_cutoff_; }
    int fock_dim() const { return fock_cutoff_ + 1; }
    int total_dim() const { return kAtomLevels * kAtomLevels * fock_dim(); }

    int index(Level atom1, Level atom2, int photons) const;
    int index(const BasisState& s) const { return index(s.atom1, s.atom2, s.photons); }
    BasisState state(int index) const;

    std::string label(int index) const;

    friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

private:
    int fock_cutoff_;
};

/// Sparse operator on a HilbertSpace.
///
/// Arithmetic is exact; entries that cancel to exactly zero are dropped so the
/// stored pattern never contains explicit zeros.
class Operator {
public:
    Operator() = default;
    explicit Operator(SparseMatrix m);

    static Operator zero(int dim);
    static Operator identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const SparseMatrix& matrix() const { return m_; }
    Eigen::Index non_zeros() const { return m_.nonZeros(); }

    Complex coeff(int row, int col) const { return m_.coeff(row, col); }
    DenseMatrix dense() const { return DenseMatrix(m_); }
    std::vector<Eigen::Triplet<Complex>> entries() const;

    Operator adjoint() const;
    Ket apply(const Ket& psi) const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex s);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Operator op, Complex s) { return op *= s; }
    friend Operator operator*(Complex s, Operator op) { return op *= s; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);

private:
    void require_same_dim(const Operator& rhs) const;
    void drop_zeros();

    SparseMatrix m_;
};

Operator commutator(const Operator& a, const Operator& b);

/// Cavity annihilation operator, <n-1|a|n> = sqrt(n).  Requires N_c >= 1.
Operator annihilation(const HilbertSpace& space);
Operator creation(const HilbertSpace& space);
Operator number(const HilbertSpace& space);

/// S^j_{alpha beta} = |alpha>_j <beta| on atom j (1 or 2), identity elsewhere.
Operator atomic_operator(const HilbertSpace& space, int atom, Level alpha, Level beta);

/// Embeds a 3x3 single-atom operator on atom j (1 or 2).
Operator embed_atom(const HilbertSpace& space, int atom, const DenseMatrix& local);
/// Embeds an (N_c+1)x(N_c+1) cavity operator.
Operator embed_cavity(const HilbertSpace& space, const DenseMatrix& local);

/// Atom-exchange unitary |s1, s2, n> -> |s2, s1, n>.
Operator atom_swap(const HilbertSpace& space);
/// Photon-parity unitary (-1)^{a^dagger a}.
Operator photon_parity(const HilbertSpace& space);

Ket basis_ket(const HilbertSpace& space, Level atom1, Level atom2, int photons);

}  // namespace cqed
