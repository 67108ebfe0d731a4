#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "brinkman/sparse.hpp"

namespace brinkman {

enum class Preconditioner { None, Jacobi };

Preconditioner parse_preconditioner(std::string_view name);
const char* to_string(Preconditioner p) noexcept;

struct SolverConfig {
    double tol = 1e-6;
    /// 0 means "use the system size".
    std::size_t maxit = 0;
    /// 0 means "equal to maxit" (full GMRES).
    std::size_t restart = 0;
    Preconditioner preconditioner = Preconditioner::None;
    /// Second modified Gram-Schmidt sweep per Arnoldi step.
    bool reorthogonalize = false;

    /// Resolves the 0 defaults against `n` and validates. Throws std::invalid_argument.
    SolverConfig resolved(std::size_t n) const;

    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct SolveReport {
    std::size_t iterations = 0;
    bool converged = false;
    /// True when the Arnoldi process terminated on an invariant subspace.
    bool breakdown = false;
    double final_relres = 0.0;
    /// Relative residual estimate after each inner iteration.
    std::vector<double> residual_history;
    double wall_time = 0.0;
};

struct SolveResult {
    std::vector<double> x;
    SolveReport report;
};

/// Restarted GMRES from a zero initial guess.
///
/// Arnoldi uses modified Gram-Schmidt; the Hessenberg least-squares problem is
/// reduced with Givens rotations. Convergence is judged on the true relative
/// residual ||b - A x|| / ||b|| (of the left-preconditioned system when Jacobi
/// is active), recomputed at every restart and at exit; a cycle whose estimate
/// falls below tol but whose true residual does not triggers another cycle.
SolveResult gmres_solve(const SparseMatrix& a, std::span<const double> b, const SolverConfig& config = {});

/// Inverse diagonal scaling for left preconditioning; rows with a zero
/// diagonal (the continuity block) get scale 1.
std::vector<double> apply_jacobi(const SparseMatrix& a);

/// Above this size direct_solve switches from dense to sparse LU.
inline constexpr std::size_t kDenseDirectLimit = 5000;

/// LU with partial pivoting. Dense (own implementation) up to
/// kDenseDirectLimit, sparse (Eigen SparseLU, COLAMD ordering) above.
/// Throws SingularMatrixError naming the failing pivot.
std::vector<double> direct_solve(const SparseMatrix& a, std::span<const double> b);

/// Dense LU regardless of size; `a` is row-major n x n and is overwritten by
/// the factors.
std::vector<double> dense_lu_solve(std::vector<double> a, std::size_t n, std::span<const double> b);

}  // namespace brinkman
