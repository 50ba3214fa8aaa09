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
#include <stdexcept>
#include <string>
#include <vector>

#include "cqed/hilbert.hpp"
#include "cqed/model.hpp"

namespace cqed {

/// Raised when a steady-state solve or a time integration fails.
class SolverError : public std::runtime_error {
public:
    enum class Kind {
        NonConvergence,   ///< residual above tolerance
        NonUnique,        ///< more than one null direction suspected
        StepUnderflow,    ///< adaptive step collapsed
        InvariantDrift,   ///< trace / Hermiticity drifted during integration
        InvalidState,     ///< density-matrix invariants violated
    };

    SolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* to_string(SolverError::Kind kind);

/// Density matrix on the composite space, stored densely.
class DensityMatrix {
public:
    struct Diagnostics {
        double trace_error = 0.0;      ///< |tr(rho) - 1|
        double hermiticity_error = 0.0;///< max |rho - rho^dag|
        double min_eigenvalue = 0.0;
    };

    DensityMatrix() = default;
    explicit DensityMatrix(DenseMatrix rho);

    static DensityMatrix pure(const Ket& psi);
    static DensityMatrix maximally_mixed(int dim);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const DenseMatrix& matrix() const { return rho_; }
    Complex trace() const { return rho_.trace(); }
    double purity() const;

    Complex expectation(const Operator& op) const;

    Diagnostics diagnostics() const;
    /// Throws SolverError(InvalidState) if trace, Hermiticity (1e-10) or
    /// positivity (min eigenvalue >= -1e-8) checks fail.
    void check() const;

private:
    DenseMatrix rho_;
};

/// Column-stacking vectorization: vec(rho)[i + j*D] = rho(i, j).  With this
/// convention vec(A rho B) = (B^T (x) A) vec(rho).
Eigen::VectorXcd vectorize(const DenseMatrix& rho);
DenseMatrix unvectorize(const Eigen::VectorXcd& v);

/// Sparse D^2 x D^2 generator of the master equation acting on vec(rho).
struct Liouvillian {
    int hilbert_dim = 0;
    SparseMatrix matrix;
    /// Optional signed-permutation unitary U with L[U rho U^dag] = U L[rho] U^dag.
    std::optional<Operator> symmetry;

    /// Infinity norm of the generator, used to scale residuals.
    double scale() const;
    DenseMatrix apply(const DenseMatrix& rho) const;
};

/// L[rho] = -i[H, rho] + sum_k (C_k rho C_k^dag - 1/2 {C_k^dag C_k, rho}).
Liouvillian build_liouvillian(const Operator& hamiltonian, std::span<const Operator> jumps);
/// Also attaches exchange_symmetry(params).
Liouvillian build_liouvillian(const ModelParams& params);

/// max over columns of |sum_i L[(i,i), col]|: zero for a trace-preserving
/// generator up to rounding.
double trace_preservation_error(const Liouvillian& liouvillian);

struct SteadyStateOptions {
    double residual_tol = 1e-10;  ///< on ||L rho||_F / ||L||_inf
    int refinement_steps = 2;
    /// Solve in the U-invariant subspace when the Liouvillian carries a symmetry.
    bool use_symmetry = true;
};

struct SteadyState {
    DensityMatrix rho;
    double residual = 0.0;   ///< ||L rho||_F / ||L||_inf
    bool used_fallback = false;
};

/// Solves L rho = 0 with tr(rho) = 1 by a sparse LU solve in which the row of
/// the <0|rho|0> equation is replaced by the trace constraint.  With a
/// symmetry the unknowns are the orbits of rho -> U rho U^dag, which roughly
/// halves the system; the full-space residual is checked either way.  Falls back to
/// inverse iteration for the smallest-magnitude eigenpair when the direct
/// solve misses the residual tolerance.  The result is checked against the
/// DensityMatrix invariants.
SteadyState steady_state(const Liouvillian& liouvillian, const SteadyStateOptions& options = {});

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-14;
    double initial_step = 1e-3;
    double min_step = 1e-12;
    long max_steps = 50'000'000;
    double drift_tol = 1e-9;
};

struct Evolution {
    DensityMatrix rho;
    long accepted_steps = 0;
    long rejected_steps = 0;
    double trace_drift = 0.0;
    double hermiticity_drift = 0.0;
};

/// Integrates d rho/dt = -i(H_eff rho - rho H_eff^dag) + sum_k C_k rho C_k^dag,
/// H_eff = H - i/2 sum_k C_k^dag C_k, with the embedded Dormand-Prince 8(5,3)
/// pair.  Works directly on the D x D matrix and never forms the Liouvillian.
Evolution time_evolve(const Operator& hamiltonian, std::span<const Operator> jumps,
                      const DensityMatrix& rho0, double t_final,
                      const IntegratorOptions& options = {});

}  // namespace cqed
