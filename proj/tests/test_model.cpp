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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "cqed/dynamics.hpp"
#include "cqed/model.hpp"
#include "test_util.hpp"

using namespace cqed;

namespace {

ModelParams random_params(std::mt19937& rng, int cutoff = 3) {
    std::uniform_real_distribution<double> u(-30.0, 30.0);
    std::uniform_real_distribution<double> pos(0.0, 3.0);
    ModelParams p;
    p.g1 = u(rng);
    p.g2 = u(rng);
    p.omega_p = u(rng) / 10;
    p.omega_c = u(rng) / 3;
    p.delta_p = u(rng);
    p.delta_c = u(rng);
    p.kappa = 0.5 + pos(rng);
    p.gamma_m = pos(rng);
    p.gamma_e = pos(rng);
    p.fock_cutoff = cutoff;
    return p;
}

}  // namespace

TEST_CASE("parameter validation") {
    ModelParams p = reference_params();
    CHECK_NOTHROW(p.validate());
    p.kappa = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.gamma_e = -1e-3;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.fock_cutoff = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.omega_c = std::nan("");
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.delta_p = INFINITY;
    CHECK_THROWS_AS(build_hamiltonian(p), std::invalid_argument);
}

TEST_CASE("reference parameters") {
    const ModelParams p = reference_params();
    CHECK(p.g1 == 20.0);
    CHECK(p.g2 == 20.0);
    CHECK(p.omega_p == doctest::Approx(0.2));
    CHECK(p.delta_c == doctest::Approx(std::sqrt(2.0) * 20.0));
    CHECK(p.gamma_m == 1.0);
    CHECK(p.gamma_e == doctest::Approx(0.01));
    CHECK(p.delta_m() == p.delta_p);
    CHECK(p.delta_e() == p.delta_p + p.delta_c);
}

TEST_CASE("Hamiltonian vanishes when every term is switched off") {
    ModelParams p;
    p.fock_cutoff = 3;
    const Operator h = build_hamiltonian(p);
    CHECK(h.dim() == 36);
    CHECK(h.non_zeros() == 0);
}

TEST_CASE("one-excitation block of the resonant equal-coupling Hamiltonian") {
    ModelParams p;
    p.g1 = p.g2 = 20.0;
    p.fock_cutoff = 3;
    const HilbertSpace space = p.space();
    const DenseMatrix h = build_hamiltonian(p).dense();
    const int idx[] = {space.index(Level::g, Level::g, 1), space.index(Level::m, Level::g, 0),
                       space.index(Level::g, Level::m, 0)};
    DenseMatrix block(3, 3);
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) block(r, c) = h(idx[r], idx[c]);
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(block);
    const double s = std::sqrt(2.0) * 20.0;
    CHECK(es.eigenvalues()(0) == doctest::Approx(-s).epsilon(1e-12));
    CHECK(std::abs(es.eigenvalues()(1)) < 1e-12);
    CHECK(es.eigenvalues()(2) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("Hamiltonian matrix elements follow the ladder coupling") {
    ModelParams p;
    p.g1 = 3.0;
    p.g2 = -5.0;
    p.omega_p = 0.7;
    p.omega_c = 1.1;
    p.delta_p = -2.0;
    p.delta_c = 4.0;
    p.fock_cutoff = 3;
    const HilbertSpace space = p.space();
    const Operator h = build_hamiltonian(p, space);
    auto el = [&](Level a1, Level a2, int n, Level b1, Level b2, int m) {
        return h.coeff(space.index(a1, a2, n), space.index(b1, b2, m));
    };
    // g_j a S_mg : |g,.,n> -> |m,.,n-1> with sqrt(n)
    CHECK(el(Level::m, Level::g, 1, Level::g, Level::g, 2) == Complex(3.0 * std::sqrt(2.0)));
    CHECK(el(Level::g, Level::m, 0, Level::g, Level::g, 1) == Complex(-5.0));
    CHECK(el(Level::m, Level::g, 2, Level::g, Level::g, 2) == Complex(0.7));
    CHECK(el(Level::e, Level::g, 0, Level::m, Level::g, 0) == Complex(1.1));
    CHECK(el(Level::g, Level::e, 1, Level::g, Level::m, 1) == Complex(1.1));
    // diagonal: delta_cav n + delta_m (#m) + delta_e (#e)
    CHECK(el(Level::m, Level::e, 2, Level::m, Level::e, 2) == Complex(2 * -2.0 + -2.0 + 2.0));
    p.cavity_offset = 0.5;
    const Operator h2 = build_hamiltonian(p, space);
    const int i = space.index(Level::g, Level::g, 3);
    CHECK(h2.coeff(i, i) == Complex(3 * -1.5));
}

TEST_CASE("Hamiltonian is exactly Hermitian for random parameters") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const Operator h = build_hamiltonian(random_params(rng));
        CHECK(test::max_abs((h - h.adjoint()).dense()) == 0.0);
    }
}

TEST_CASE("Hamiltonian is linear in the couplings and Rabi frequencies") {
    std::mt19937 rng(99);
    const ModelParams base = random_params(rng);
    double ModelParams::*fields[] = {&ModelParams::omega_p, &ModelParams::omega_c, &ModelParams::g1,
                                     &ModelParams::g2};
    for (auto field : fields) {
        ModelParams plus = base, minus = base, zero = base;
        plus.*field += 0.5;
        minus.*field -= 0.5;
        // H(x + d) - 2 H(x) + H(x - d) vanishes for a linear dependence
        const DenseMatrix second = build_hamiltonian(plus).dense() - 2.0 * build_hamiltonian(base).dense() +
                                   build_hamiltonian(minus).dense();
        CHECK(test::max_abs(second) < 1e-12);
        // and the first difference equals the coefficient matrix at zero
        zero.*field = 0.0;
        ModelParams unit = zero;
        unit.*field = 1.0;
        const DenseMatrix slope = build_hamiltonian(unit).dense() - build_hamiltonian(zero).dense();
        const DenseMatrix diff = build_hamiltonian(plus).dense() - build_hamiltonian(minus).dense();
        CHECK(test::max_abs(diff - slope) < 1e-12);
    }
}

TEST_CASE("collapse operators") {
    SUBCASE("pure cavity decay") {
        ModelParams p;
        p.fock_cutoff = 3;
        const auto jumps = collapse_operators(p);
        REQUIRE(jumps.size() == 1);
        CHECK(test::max_abs(jumps[0].dense() - annihilation(p.space()).dense()) == 0.0);
    }
    SUBCASE("reference rates") {
        ModelParams p = reference_params();
        p.fock_cutoff = 3;
        const HilbertSpace space = p.space();
        const auto jumps = collapse_operators(p, space);
        REQUIRE(jumps.size() == 5);
        const double expected[] = {1.0, 0.1, 0.1, 1.0, 1.0};
        const Operator bare[] = {annihilation(space), atomic_operator(space, 1, Level::m, Level::e),
                                 atomic_operator(space, 2, Level::m, Level::e),
                                 atomic_operator(space, 1, Level::g, Level::m),
                                 atomic_operator(space, 2, Level::g, Level::m)};
        for (int k = 0; k < 5; ++k) {
            CHECK(test::max_abs(jumps[k].dense() - expected[k] * bare[k].dense()) < 1e-15);
        }
    }
    SUBCASE("jumps lower the atomic energy") {
        ModelParams p = reference_params();
        p.fock_cutoff = 2;
        const HilbertSpace space = p.space();
        const auto jumps = collapse_operators(p, space);
        CHECK(jumps[1].apply(basis_ket(space, Level::e, Level::g, 0)).norm() > 0.0);
        CHECK(jumps[1].apply(basis_ket(space, Level::m, Level::g, 0)).norm() == 0.0);
        CHECK(jumps[3].apply(basis_ket(space, Level::m, Level::g, 0)).norm() > 0.0);
        CHECK(jumps[3].apply(basis_ket(space, Level::g, Level::g, 0)).norm() == 0.0);
    }
}

TEST_CASE("each dissipator annihilates the ground-state projector") {
    ModelParams p = reference_params();
    p.fock_cutoff = 3;
    const HilbertSpace space = p.space();
    const DenseMatrix ground = DensityMatrix::pure(basis_ket(space, Level::g, Level::g, 0)).matrix();
    const Operator zero_h = Operator::zero(space.total_dim());
    for (const auto& jump : collapse_operators(p, space)) {
        const std::vector<Operator> one{jump};
        const Liouvillian l = build_liouvillian(zero_h, one);
        CHECK(test::max_abs(l.apply(ground)) == 0.0);
    }
}

TEST_CASE("excitation number is conserved without the pump") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        ModelParams p = random_params(rng);
        const HilbertSpace space = p.space();
        const Operator n = excitation_number(space);
        CHECK(test::max_abs(commutator(build_hamiltonian(p), n).dense()) > 0.0);
        p.omega_p = 0.0;
        CHECK(test::max_abs(commutator(build_hamiltonian(p), n).dense()) < 1e-12);
    }
}

TEST_CASE("gauge and atom-swap symmetries of the Hamiltonian") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const ModelParams p = random_params(rng);
        const HilbertSpace space = p.space();
        const Operator parity = photon_parity(space);
        const Operator swap = atom_swap(space);

        ModelParams flipped = p;
        flipped.g1 = -p.g1;
        flipped.g2 = -p.g2;
        CHECK(test::max_abs((parity * build_hamiltonian(p) * parity).dense() -
                            build_hamiltonian(flipped).dense()) < 1e-13);

        ModelParams swapped = p;
        std::swap(swapped.g1, swapped.g2);
        CHECK(test::max_abs((swap * build_hamiltonian(p) * swap).dense() -
                            build_hamiltonian(swapped).dense()) < 1e-13);
        const auto jumps = collapse_operators(p, space);
        const auto jumps_swapped = collapse_operators(swapped, space);
        REQUIRE(jumps.size() == jumps_swapped.size());
        // swapping exchanges the two atoms' channels and leaves the cavity one alone
        CHECK(test::max_abs((swap * jumps[0] * swap).dense() - jumps_swapped[0].dense()) == 0.0);
        CHECK(test::max_abs((swap * jumps[1] * swap).dense() - jumps_swapped[2].dense()) == 0.0);
        CHECK(test::max_abs((swap * jumps[3] * swap).dense() - jumps_swapped[4].dense()) == 0.0);
    }
}

TEST_CASE("exchange symmetry is selected by the coupling signs") {
    ModelParams p = reference_params();
    p.fock_cutoff = 3;
    const HilbertSpace space = p.space();
    for (double g2 : {20.0, -20.0}) {
        p.g2 = g2;
        p.omega_c = 3.0;
        const auto u = exchange_symmetry(p, space);
        REQUIRE(u.has_value());
        CHECK(test::max_abs((*u * build_hamiltonian(p) * u->adjoint()).dense() -
                            build_hamiltonian(p).dense()) < 1e-13);
        CHECK(test::max_abs((*u * u->adjoint()).dense() -
                            DenseMatrix::Identity(space.total_dim(), space.total_dim())) == 0.0);
    }
    p.g2 = 7.0;
    CHECK_FALSE(exchange_symmetry(p, space).has_value());
}

TEST_CASE("scaling multiplies every rate") {
    const ModelParams p = reference_params();
    const ModelParams s = p.scaled(2.0);
    CHECK(s.g1 == 40.0);
    CHECK(s.kappa == 2.0);
    CHECK(s.gamma_e == doctest::Approx(0.02));
    CHECK(s.fock_cutoff == p.fock_cutoff);
}
