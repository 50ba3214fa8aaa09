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

#include "cqed/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/UmfPackSupport>
#include <fmt/format.h>

namespace cqed {

namespace {

using Triplet = Eigen::Triplet<Complex>;
using Vector = Eigen::VectorXcd;
using LU = Eigen::UmfPackLU<SparseMatrix>;

constexpr Complex kI{0.0, 1.0};

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

double hermiticity_error(const DenseMatrix& rho) {
    return rho.rows() == 0 ? 0.0 : (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

// Appends the entries of kron(p, q) * factor, where p and q are D x D.
void append_kron(std::vector<Triplet>& out, const SparseMatrix& p, const SparseMatrix& q,
                 Complex factor) {
    const auto d = q.rows();
    for (int pk = 0; pk < p.outerSize(); ++pk) {
        for (SparseMatrix::InnerIterator pit(p, pk); pit; ++pit) {
            const Complex u = factor * pit.value();
            for (int qk = 0; qk < q.outerSize(); ++qk) {
                for (SparseMatrix::InnerIterator qit(q, qk); qit; ++qit) {
                    out.emplace_back(static_cast<int>(qit.row() + pit.row() * d),
                                     static_cast<int>(qit.col() + pit.col() * d),
                                     u * qit.value());
                }
            }
        }
    }
}

SparseMatrix sparse_identity(Eigen::Index d) {
    SparseMatrix id(d, d);
    id.setIdentity();
    return id;
}

double relative_residual(const Liouvillian& l, const Vector& v) {
    return (l.matrix * v).norm() / l.scale();
}

// Dense eigen-solve of a small Hermitian matrix; returns the smallest eigenvalue.
double min_eigenvalue(const DenseMatrix& rho) {
    const DenseMatrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Fallback: inverse iteration towards the eigenvalue of L closest to zero.
Vector inverse_iteration(const Liouvillian& l, const Vector& start) {
    const auto n = l.matrix.rows();
    const double shift = 1e-9 * l.scale();
    SparseMatrix shifted = l.matrix - Complex(shift) * sparse_identity(n);
    LU lu;
    lu.compute(shifted);
    if (lu.info() != Eigen::Success) {
        throw SolverError(SolverError::Kind::NonConvergence,
                          "steady state: shifted Liouvillian factorization failed");
    }
    Vector x = start.normalized();
    for (int it = 0; it < 50; ++it) {
        Vector y = lu.solve(x);
        y.normalize();
        const double change = (y - x).norm();
        x = std::move(y);
        if (change < 1e-14) break;
    }
    return x;
}

// Column k of a signed permutation holds a single +-1 entry.
bool signed_permutation(const SparseMatrix& u, std::vector<int>& perm, std::vector<double>& sign) {
    const auto d = u.cols();
    perm.assign(d, -1);
    sign.assign(d, 0.0);
    for (int k = 0; k < d; ++k) {
        for (SparseMatrix::InnerIterator it(u, k); it; ++it) {
            const double re = it.value().real();
            if (perm[k] >= 0 || it.value().imag() != 0.0 || std::abs(re) != 1.0) return false;
            perm[k] = static_cast<int>(it.row());
            sign[k] = re;
        }
        if (perm[k] < 0) return false;
    }
    return true;
}

// Trace-constrained solve restricted to rho = U rho U^dag.  Unknown c stands
// for the pair vec index K and its image K' = (pi(i), pi(j)), with
// rho[K'] = s_i s_j rho[K].  Rows are taken at the orbit representatives,
// which suffices because L maps invariant states to invariant states.
// Returns an empty vector when the factorization fails.
Vector solve_symmetric(const Liouvillian& liouvillian, const Operator& symmetry,
                       const SteadyStateOptions& options) {
    const int d = liouvillian.hilbert_dim;
    std::vector<int> perm;
    std::vector<double> sign;
    if (symmetry.dim() != d || !signed_permutation(symmetry.matrix(), perm, sign)) return {};

    const auto n = static_cast<Eigen::Index>(d) * d;
    std::vector<Eigen::Index> image(n), unknown(n, -1), reps;
    std::vector<double> phase(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto i = k % d;
        const auto j = k / d;
        image[k] = perm[i] + static_cast<Eigen::Index>(perm[j]) * d;
        phase[k] = sign[i] * sign[j];
        if (image[k] < k) continue;
        if (image[k] == k && phase[k] < 0.0) continue;  // forced to zero
        unknown[k] = static_cast<Eigen::Index>(reps.size());
        reps.push_back(k);
    }
    const auto m = static_cast<Eigen::Index>(reps.size());

    const SparseMatrix& l = liouvillian.matrix;
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(l.nonZeros()));
    for (Eigen::Index c = 0; c < m; ++c) {
        const Eigen::Index k = reps[c];
        auto add_column = [&](Eigen::Index col, double factor) {
            for (SparseMatrix::InnerIterator it(l, col); it; ++it) {
                const Eigen::Index r = unknown[it.row()];
                if (r > 0) {
                    triplets.emplace_back(static_cast<int>(r), static_cast<int>(c),
                                          factor * it.value());
                }
            }
        };
        add_column(k, 1.0);
        if (image[k] != k) add_column(image[k], phase[k]);
    }
    // Row 0 is the orbit of <0|rho|0>; it carries the trace.
    for (int i = 0; i < d; ++i) {
        const Eigen::Index k = static_cast<Eigen::Index>(i) * (d + 1);
        const Eigen::Index rep = unknown[k] >= 0 ? k : image[k];
        if (unknown[rep] >= 0) triplets.emplace_back(0, static_cast<int>(unknown[rep]), 1.0);
    }
    SparseMatrix system(m, m);
    system.setFromTriplets(triplets.begin(), triplets.end());
    system.makeCompressed();

    LU lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success) return {};
    Vector rhs = Vector::Zero(m);
    rhs(0) = 1.0;
    Vector y = lu.solve(rhs);
    for (int step = 0; step < options.refinement_steps; ++step) {
        const Vector r = rhs - system * y;
        y += lu.solve(r);
    }

    Vector x = Vector::Zero(n);
    for (Eigen::Index c = 0; c < m; ++c) {
        const Eigen::Index k = reps[c];
        x(k) = y(c);
        if (image[k] != k) x(image[k]) = phase[k] * y(c);
    }
    return x;
}

// Row-compressed operator with the two products the integrator needs.  Both
// walk the column-major dense operand column by column.
class RowSparse {
public:
    explicit RowSparse(const SparseMatrix& m) : rows_(m.rows()) {
        const Eigen::SparseMatrix<Complex, Eigen::RowMajor> r = m;
        row_ptr_.assign(r.outerIndexPtr(), r.outerIndexPtr() + r.outerSize() + 1);
        cols_.assign(r.innerIndexPtr(), r.innerIndexPtr() + r.nonZeros());
        vals_.assign(r.valuePtr(), r.valuePtr() + r.nonZeros());
    }

    // out += alpha * A x
    void left_multiply_add(const DenseMatrix& x, Complex alpha, DenseMatrix& out) const {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const Complex* xc = x.col(j).data();
            Complex* oc = out.col(j).data();
            for (Eigen::Index i = 0; i < rows_; ++i) {
                Complex acc = 0.0;
                for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += vals_[p] * xc[cols_[p]];
                oc[i] += alpha * acc;
            }
        }
    }

    // out += alpha * x A^dag; column j of the product is sum_k conj(A(j,k)) x(:,k).
    void right_multiply_adjoint_add(const DenseMatrix& x, Complex alpha, DenseMatrix& out) const {
        for (Eigen::Index j = 0; j < rows_; ++j) {
            for (int p = row_ptr_[j]; p < row_ptr_[j + 1]; ++p) {
                out.col(j) += (alpha * std::conj(vals_[p])) * x.col(cols_[p]);
            }
        }
    }

private:
    Eigen::Index rows_;
    std::vector<int> row_ptr_;
    std::vector<int> cols_;
    std::vector<Complex> vals_;
};

// Dormand-Prince 8(5,3) tableau (Hairer's DOP853).  The generator is
// autonomous, so the stage nodes are not needed.
namespace dop853 {
constexpr int kStages = 12;
constexpr double kA[kStages][kStages] = {
    {},
    {0.05260015195876773},
    {0.0197250569845379, 0.0591751709536137},
    {0.02958758547680685, 0.0, 0.08876275643042054},
    {0.2413651341592667, 0.0, -0.8845494793282861, 0.924834003261792},
    {0.037037037037037035, 0.0, 0.0, 0.17082860872947386, 0.12546768756682242},
    {0.037109375, 0.0, 0.0, 0.17025221101954405, 0.06021653898045596, -0.017578125},
    {0.03709200011850479, 0.0, 0.0, 0.17038392571223998, 0.10726203044637328,
     -0.015319437748624402, 0.008273789163814023},
    {0.6241109587160757, 0.0, 0.0, -3.3608926294469414, -0.868219346841726, 27.59209969944671,
     20.154067550477894, -43.48988418106996},
    {0.47766253643826434, 0.0, 0.0, -2.4881146199716677, -0.590290826836843, 21.230051448181193,
     15.279233632882423, -33.28821096898486, -0.020331201708508627},
    {-0.9371424300859873, 0.0, 0.0, 5.186372428844064, 1.0914373489967295, -8.149787010746927,
     -18.52006565999696, 22.739487099350505, 2.4936055526796523, -3.0467644718982196},
    {2.273310147516538, 0.0, 0.0, -10.53449546673725, -2.0008720582248625, -17.9589318631188,
     27.94888452941996, -2.8589982771350235, -8.87285693353063, 12.360567175794303,
     0.6433927460157636},
};
constexpr double kB[kStages] = {
    0.054293734116568765, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003,
    -5.801203960010585, 0.3111643669578199, -0.1521609496625161, 0.20136540080403034,
    0.04471061572777259,
};
constexpr double kE3[kStages] = {
    -0.18980075407240762, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003,
    -5.801203960010585, -0.4226823213237919, -0.1521609496625161, 0.20136540080403034,
    0.02265179219836082,
};
constexpr double kE5[kStages] = {
    0.01312004499419488, 0.0, 0.0, 0.0, 0.0, -1.2251564463762044, -0.4957589496572502,
    1.6643771824549864, -0.35032884874997366, 0.3341791187130175, 0.08192320648511571,
    -0.022355307863886294,
};
}  // namespace dop853

}  // namespace

const char* to_string(SolverError::Kind kind) {
    switch (kind) {
        case SolverError::Kind::NonConvergence: return "non-convergence";
        case SolverError::Kind::NonUnique: return "non-unique";
        case SolverError::Kind::StepUnderflow: return "step-underflow";
        case SolverError::Kind::InvariantDrift: return "invariant-drift";
        case SolverError::Kind::InvalidState: return "invalid-state";
    }
    return "unknown";
}

DensityMatrix::DensityMatrix(DenseMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
    return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(DenseMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

Complex DensityMatrix::expectation(const Operator& op) const {
    if (op.dim() != dim()) {
        throw std::invalid_argument(
            fmt::format("operator dimension {} does not match state dimension {}", op.dim(), dim()));
    }
    // tr(A rho) = sum_{ij} A_ij rho_ji
    Complex acc = 0.0;
    const SparseMatrix& a = op.matrix();
    for (int k = 0; k < a.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
            acc += it.value() * rho_(it.col(), it.row());
        }
    }
    return acc;
}

DensityMatrix::Diagnostics DensityMatrix::diagnostics() const {
    return {std::abs(rho_.trace() - 1.0), hermiticity_error(rho_), min_eigenvalue(rho_)};
}

void DensityMatrix::check() const {
    const auto d = diagnostics();
    if (d.trace_error > 1e-10 || d.hermiticity_error > 1e-10 || d.min_eigenvalue < -1e-8) {
        throw SolverError(SolverError::Kind::InvalidState,
                          fmt::format("density matrix invariants violated: trace error {:.3g}, "
                                      "hermiticity error {:.3g}, min eigenvalue {:.3g}",
                                      d.trace_error, d.hermiticity_error, d.min_eigenvalue));
    }
}

Eigen::VectorXcd vectorize(const DenseMatrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

DenseMatrix unvectorize(const Eigen::VectorXcd& v) {
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d * d != v.size()) {
        throw std::invalid_argument("vector length is not a perfect square");
    }
    return Eigen::Map<const DenseMatrix>(v.data(), d, d);
}

double Liouvillian::scale() const {
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(matrix.rows());
    for (int k = 0; k < matrix.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(matrix, k); it; ++it) {
            row_sums(it.row()) += std::abs(it.value());
        }
    }
    return row_sums.size() == 0 ? 0.0 : row_sums.maxCoeff();
}

DenseMatrix Liouvillian::apply(const DenseMatrix& rho) const {
    if (rho.rows() != hilbert_dim || rho.cols() != hilbert_dim) {
        throw std::invalid_argument("state dimension does not match the Liouvillian");
    }
    return unvectorize(matrix * vectorize(rho));
}

Liouvillian build_liouvillian(const Operator& hamiltonian, std::span<const Operator> jumps) {
    const int d = hamiltonian.dim();
    for (const auto& c : jumps) {
        if (c.dim() != d) {
            throw std::invalid_argument(
                fmt::format("jump operator dimension {} does not match Hamiltonian dimension {}",
                            c.dim(), d));
        }
    }
    const SparseMatrix id = sparse_identity(d);
    const SparseMatrix& h = hamiltonian.matrix();

    std::vector<Triplet> triplets;
    // -i (I (x) H - H^T (x) I)
    append_kron(triplets, id, h, -kI);
    append_kron(triplets, SparseMatrix(h.transpose()), id, kI);
    for (const auto& jump : jumps) {
        const SparseMatrix& c = jump.matrix();
        const SparseMatrix cdc = c.adjoint() * c;
        // C rho C^dag -> conj(C) (x) C
        append_kron(triplets, SparseMatrix(c.conjugate()), c, 1.0);
        append_kron(triplets, id, cdc, -0.5);
        append_kron(triplets, SparseMatrix(cdc.transpose()), id, -0.5);
    }

    Liouvillian l;
    l.hilbert_dim = d;
    l.matrix.resize(static_cast<Eigen::Index>(d) * d, static_cast<Eigen::Index>(d) * d);
    l.matrix.setFromTriplets(triplets.begin(), triplets.end());
    l.matrix.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex(0.0); });
    l.matrix.makeCompressed();
    return l;
}

Liouvillian build_liouvillian(const ModelParams& params) {
    const auto space = params.space();
    const auto jumps = collapse_operators(params, space);
    Liouvillian l = build_liouvillian(build_hamiltonian(params, space), jumps);
    l.symmetry = exchange_symmetry(params, space);
    return l;
}

double trace_preservation_error(const Liouvillian& liouvillian) {
    const int d = liouvillian.hilbert_dim;
    double worst = 0.0;
    for (int k = 0; k < liouvillian.matrix.outerSize(); ++k) {
        Complex sum = 0.0;
        for (SparseMatrix::InnerIterator it(liouvillian.matrix, k); it; ++it) {
            if (it.row() % (d + 1) == 0) sum += it.value();
        }
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

SteadyState steady_state(const Liouvillian& liouvillian, const SteadyStateOptions& options) {
    const int d = liouvillian.hilbert_dim;
    const auto n = static_cast<Eigen::Index>(d) * d;
    if (liouvillian.matrix.rows() != n || n == 0) {
        throw std::invalid_argument("Liouvillian is empty or inconsistent with its dimension");
    }

    if (options.use_symmetry && liouvillian.symmetry) {
        Vector x = solve_symmetric(liouvillian, *liouvillian.symmetry, options);
        if (x.size() == n) {
            const double residual = relative_residual(liouvillian, x);
            if (residual <= options.residual_tol) {
                SteadyState out;
                out.residual = residual;
                out.rho = DensityMatrix(unvectorize(x));
                out.rho.check();
                return out;
            }
        }
    }

    // Row 0 (the equation for <0|rho|0>) is replaced by tr(rho) = 1.  Since
    // L is trace preserving that row is linearly dependent on the other
    // population equations.
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(liouvillian.matrix.nonZeros() + d));
    const SparseMatrix& l = liouvillian.matrix;
    for (int k = 0; k < l.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator it(l, k); it; ++it) {
            if (it.row() != 0) triplets.emplace_back(static_cast<int>(it.row()), k, it.value());
        }
    }
    for (int i = 0; i < d; ++i) triplets.emplace_back(0, i * (d + 1), 1.0);
    SparseMatrix system(n, n);
    system.setFromTriplets(triplets.begin(), triplets.end());
    system.makeCompressed();

    LU lu;
    lu.compute(system);
    if (lu.info() != Eigen::Success) {
        throw SolverError(SolverError::Kind::NonUnique,
                          "steady state: trace-constrained system is singular; the Liouvillian "
                          "appears to have more than one null direction");
    }
    Vector rhs = Vector::Zero(n);
    rhs(0) = 1.0;
    Vector x = lu.solve(rhs);
    for (int step = 0; step < options.refinement_steps; ++step) {
        const Vector r = rhs - system * x;
        x += lu.solve(r);
    }

    SteadyState out;
    out.residual = relative_residual(liouvillian, x);
    if (!(out.residual <= options.residual_tol)) {
        Vector y = inverse_iteration(liouvillian, vectorize(DenseMatrix::Identity(d, d)));
        Complex tr = 0.0;
        for (int i = 0; i < d; ++i) tr += y(i * (d + 1));
        if (std::abs(tr) < 1e-12) {
            throw SolverError(SolverError::Kind::NonUnique,
                              "steady state: null vector of the Liouvillian is traceless");
        }
        y /= tr;
        const double residual = relative_residual(liouvillian, y);
        if (!(residual <= options.residual_tol)) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              fmt::format("steady state: residual {:.3e} above tolerance {:.3e}",
                                          std::min(out.residual, residual), options.residual_tol));
        }
        x = std::move(y);
        out.residual = residual;
        out.used_fallback = true;
    }
    out.rho = DensityMatrix(unvectorize(x));
    out.rho.check();
    return out;
}

Evolution time_evolve(const Operator& hamiltonian, std::span<const Operator> jumps,
                      const DensityMatrix& rho0, double t_final, const IntegratorOptions& options) {
    const int d = hamiltonian.dim();
    if (rho0.dim() != d) {
        throw std::invalid_argument("initial state dimension does not match the Hamiltonian");
    }
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw std::invalid_argument("t_final must be positive and finite");
    }
    for (const auto& c : jumps) {
        if (c.dim() != d) throw std::invalid_argument("jump operator dimension mismatch");
    }

    SparseMatrix h_eff = hamiltonian.matrix();
    std::vector<RowSparse> cs;
    for (const auto& c : jumps) {
        h_eff -= Complex(0.0, 0.5) * SparseMatrix(c.matrix().adjoint() * c.matrix());
        cs.emplace_back(c.matrix());
    }
    const RowSparse heff(h_eff);

    DenseMatrix work(d, d);
    auto rhs = [&](const DenseMatrix& rho, DenseMatrix& out) {
        out.setZero();
        heff.left_multiply_add(rho, -kI, out);      // -i H_eff rho
        heff.right_multiply_adjoint_add(rho, kI, out);  // +i rho H_eff^dag
        for (const auto& c : cs) {
            work.setZero();
            c.left_multiply_add(rho, 1.0, work);
            c.right_multiply_adjoint_add(work, 1.0, out);  // C rho C^dag
        }
    };

    const Complex trace0 = rho0.trace();
    const double herm0 = hermiticity_error(rho0.matrix());

    constexpr int kStages = dop853::kStages;
    DenseMatrix y = rho0.matrix();
    std::vector<DenseMatrix> k(kStages + 1, DenseMatrix(d, d));
    DenseMatrix stage(d, d), y_new(d, d), err5(d, d), err3(d, d);
    rhs(y, k[0]);

    Evolution out;
    double t = 0.0;
    double h = std::min(options.initial_step, t_final);

    auto check_drift = [&](const DenseMatrix& state) {
        out.trace_drift = std::abs(state.trace() - trace0);
        out.hermiticity_drift = std::max(0.0, hermiticity_error(state) - herm0);
        if (out.trace_drift > options.drift_tol || out.hermiticity_drift > options.drift_tol) {
            throw SolverError(SolverError::Kind::InvariantDrift,
                              fmt::format("time evolution: trace drift {:.3e}, hermiticity drift "
                                          "{:.3e} at t = {}",
                                          out.trace_drift, out.hermiticity_drift, t));
        }
    };

    while (t < t_final) {
        if (out.accepted_steps + out.rejected_steps >= options.max_steps) {
            throw SolverError(SolverError::Kind::NonConvergence,
                              fmt::format("time evolution: step budget exhausted at t = {}", t));
        }
        const bool last = t + h >= t_final;
        if (last) h = t_final - t;

        for (int s = 1; s < kStages; ++s) {
            stage = y;
            for (int j = 0; j < s; ++j) {
                if (dop853::kA[s][j] != 0.0) stage.noalias() += (h * dop853::kA[s][j]) * k[j];
            }
            rhs(stage, k[s]);
        }
        y_new = y;
        err5.setZero();
        err3.setZero();
        for (int j = 0; j < kStages; ++j) {
            if (dop853::kB[j] != 0.0) y_new.noalias() += (h * dop853::kB[j]) * k[j];
            if (dop853::kE5[j] != 0.0) err5.noalias() += dop853::kE5[j] * k[j];
            if (dop853::kE3[j] != 0.0) err3.noalias() += dop853::kE3[j] * k[j];
        }

        // Max-norms of the scaled embedded estimates, |z| taken as |Re z| + |Im z|.
        double e5 = 0.0;
        double e3 = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale =
                options.atol + options.rtol * std::max(abs1(y(i)), abs1(y_new(i)));
            e5 = std::max(e5, abs1(err5(i)) / scale);
            e3 = std::max(e3, abs1(err3(i)) / scale);
        }
        const double denom = std::sqrt(e5 * e5 + 0.01 * e3 * e3);
        const double err_norm = denom == 0.0 ? 0.0 : h * e5 * e5 / denom;

        if (err_norm <= 1.0) {
            t = last ? t_final : t + h;
            y.swap(y_new);
            rhs(y, k[0]);
            ++out.accepted_steps;
            if (out.accepted_steps % 1000 == 0) check_drift(y);
        } else {
            ++out.rejected_steps;
        }
        const double factor =
            err_norm == 0.0 ? 10.0 : std::clamp(0.9 * std::pow(err_norm, -1.0 / 8.0), 0.2, 10.0);
        h *= err_norm <= 1.0 ? factor : std::min(factor, 1.0);
        if (h < options.min_step && t < t_final) {
            throw SolverError(SolverError::Kind::StepUnderflow,
                              fmt::format("time evolution: step size {:.3e} underflow at t = {}", h, t));
        }
    }
    check_drift(y);
    out.rho = DensityMatrix(std::move(y));
    return out;
}

}  // namespace cqed
