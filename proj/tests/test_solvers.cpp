#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brinkman/discretization.hpp"
#include "brinkman/errors.hpp"
#include "brinkman/solvers.hpp"

using namespace brinkman;

namespace {

SparseMatrix dense_to_sparse(std::size_t n, const std::vector<double>& d) {
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (d[r * n + c] != 0.0) t.push_back({r, c, d[r * n + c]});
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

// Diagonally dominant random nonsymmetric matrix, nonsingular by Gershgorin.
SparseMatrix random_system(std::size_t n, std::mt19937_64& rng, double density = 0.1) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution keep(density);
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < n; ++r) {
        double off = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            if (c == r || !keep(rng)) continue;
            const double v = u(rng);
            off += std::abs(v);
            t.push_back({r, c, v});
        }
        t.push_back({r, r, (u(rng) > 0 ? 1.0 : -1.0) * (off + 0.5 + std::abs(u(rng)))});
    }
    return SparseMatrix::from_triplets(n, n, std::move(t));
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        num += (a[k] - b[k]) * (a[k] - b[k]);
        den += b[k] * b[k];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST(Gmres, IdentityConvergesInOneIteration) {
    const std::vector<double> b{1.0, -2.0, 3.0, 0.5};
    const SolveResult r = gmres_solve(SparseMatrix::identity(4), b);
    EXPECT_EQ(r.report.iterations, 1u);
    EXPECT_TRUE(r.report.converged);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(r.x[k], b[k], 1e-15);
}

TEST(Gmres, ThreeDistinctEigenvaluesThreeIterations) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> d(30);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = std::array{1.0, 2.0, 5.0}[k % 3];
    std::vector<double> b(30);
    for (double& v : b) v = n(rng);
    SolverConfig c;
    c.tol = 1e-12;
    const SolveResult r = gmres_solve(SparseMatrix::diagonal(d), b, c);
    EXPECT_LE(r.report.iterations, 3u);
    EXPECT_LE(r.report.final_relres, 1e-12);
}

TEST(Gmres, TwoByTwoUpperTriangular) {
    const SparseMatrix a = SparseMatrix::from_triplets(2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 3.0}});
    SolverConfig c;
    c.tol = 1e-14;
    const SolveResult r = gmres_solve(a, std::vector<double>{3.0, 3.0}, c);
    EXPECT_LE(r.report.iterations, 2u);
    EXPECT_LE(r.report.final_relres, 1e-14);
    EXPECT_NEAR(r.x[0], 1.0, 1e-14);
    EXPECT_NEAR(r.x[1], 1.0, 1e-14);
}

TEST(Gmres, ZeroRhsReturnsZero) {
    const SolveResult r = gmres_solve(SparseMatrix::identity(3), std::vector<double>(3, 0.0));
    EXPECT_TRUE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 0u);
}

TEST(Gmres, MaxitExceededReportsNonConvergence) {
    std::mt19937_64 rng(1);
    const SparseMatrix a = random_system(60, rng);
    std::vector<double> b(60, 1.0);
    SolverConfig c;
    c.tol = 1e-12;
    c.maxit = 2;
    const SolveResult r = gmres_solve(a, b, c);
    EXPECT_FALSE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 2u);
    EXPECT_NEAR(r.report.final_relres, relative_residual(a, r.x, b), 1e-14);
    EXPECT_GT(r.report.final_relres, c.tol);
}

TEST(Gmres, RestartedStillConverges) {
    std::mt19937_64 rng(9);
    const SparseMatrix a = random_system(120, rng);
    std::vector<double> b(120, 1.0);
    SolverConfig c;
    c.tol = 1e-10;
    c.maxit = 2000;
    c.restart = 10;
    const SolveResult r = gmres_solve(a, b, c);
    EXPECT_TRUE(r.report.converged);
    EXPECT_LE(relative_residual(a, r.x, b), 1e-10);
}

TEST(Gmres, InvalidConfigurationThrows) {
    SolverConfig c;
    c.tol = 0.0;
    EXPECT_THROW(gmres_solve(SparseMatrix::identity(2), std::vector<double>{1, 1}, c), std::invalid_argument);
    c.tol = 1e-6;
    c.maxit = 3;
    c.restart = 5;
    EXPECT_THROW(gmres_solve(SparseMatrix::identity(2), std::vector<double>{1, 1}, c), std::invalid_argument);
    EXPECT_THROW(gmres_solve(SparseMatrix::identity(2), std::vector<double>{1, 1, 1}), std::invalid_argument);
}

TEST(GmresProperty, FiniteTerminationMonotonicityAndOracleAgreement) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> size(2, 200);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t dim = size(rng);
        const SparseMatrix a = random_system(dim, rng, 0.2);
        std::vector<double> b(dim);
        for (double& v : b) v = n(rng);

        SolverConfig tight;
        tight.tol = 1e-10;
        const SolveResult r = gmres_solve(a, b, tight);
        EXPECT_TRUE(r.report.converged) << "n = " << dim;
        EXPECT_LE(r.report.iterations, dim);
        const auto& h = r.report.residual_history;
        for (std::size_t k = 1; k < h.size(); ++k) EXPECT_LE(h[k], h[k - 1] + 1e-14);

        const SolveResult loose = gmres_solve(a, b);
        const std::vector<double> x = direct_solve(a, b);
        EXPECT_LE(rel_diff(loose.x, x), 100.0 * 1e-6);
    }
}

TEST(Gmres, DeterministicHistories) {
    std::mt19937_64 rng(77);
    const SparseMatrix a = random_system(150, rng);
    std::vector<double> b(150, 1.0);
    const SolveResult r1 = gmres_solve(a, b);
    const SolveResult r2 = gmres_solve(a, b);
    EXPECT_EQ(r1.report.iterations, r2.report.iterations);
    EXPECT_EQ(r1.report.residual_history, r2.report.residual_history);
    EXPECT_EQ(r1.x, r2.x);
}

TEST(Gmres, BreakdownOnInvariantSubspace) {
    // b is an eigenvector: the Krylov space is one-dimensional.
    const SparseMatrix a = SparseMatrix::from_triplets(3, 3, {{0, 0, 2.0}, {1, 1, 3.0}, {2, 2, 4.0}, {1, 2, 1.0}});
    const SolveResult r = gmres_solve(a, std::vector<double>{1.0, 0.0, 0.0});
    EXPECT_TRUE(r.report.breakdown);
    EXPECT_TRUE(r.report.converged);
    EXPECT_NEAR(r.x[0], 0.5, 1e-15);
}

TEST(Jacobi, ScalingRules) {
    EXPECT_EQ(apply_jacobi(SparseMatrix::identity(3)), (std::vector<double>{1.0, 1.0, 1.0}));
    const SparseMatrix d = SparseMatrix::diagonal(std::vector<double>{10.0, 0.1});
    EXPECT_EQ(apply_jacobi(d), (std::vector<double>{0.1, 10.0}));
    SolverConfig c;
    c.preconditioner = Preconditioner::Jacobi;
    c.tol = 1e-14;
    const SolveResult r = gmres_solve(d, std::vector<double>{1.0, 1.0}, c);
    EXPECT_EQ(r.report.iterations, 1u);
    EXPECT_NEAR(r.x[0], 0.1, 1e-15);
    EXPECT_NEAR(r.x[1], 10.0, 1e-13);

    const SparseMatrix zero_diag = SparseMatrix::from_triplets(2, 2, {{0, 0, 4.0}, {0, 1, 1.0}, {1, 0, 2.0}});
    const auto s = apply_jacobi(zero_diag);
    EXPECT_EQ(s[0], 0.25);
    EXPECT_EQ(s[1], 1.0);
}

TEST(Jacobi, PreconditionedMonolithicSolve) {
    const StaggeredGrid g(8, 8);
    const auto k = normalize(generate_contrast_field(g, 1e3, 1e3, FieldPattern::Layered, 0));
    const auto s = assemble_monolithic(g, k, 1.0, uniform_boundary(g, 1.0, 0.0), AssemblyOptions{true, true});
    SolverConfig c;
    c.preconditioner = Preconditioner::Jacobi;
    c.tol = 1e-10;
    const SolveResult r = gmres_solve(s.matrix, s.rhs, c);
    EXPECT_TRUE(r.report.converged);
    EXPECT_LE(rel_diff(r.x, direct_solve(s.matrix, s.rhs)), 1e-6);
}

TEST(Direct, SmallSystems) {
    const std::vector<double> b{1.0, 2.0, 3.0};
    EXPECT_EQ(direct_solve(SparseMatrix::identity(3), b), b);
    const SparseMatrix a = SparseMatrix::from_triplets(2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 3.0}});
    const auto x = direct_solve(a, std::vector<double>{3.0, 3.0});
    EXPECT_NEAR(x[0], 1.0, 1e-15);
    EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(Direct, PivotingHandlesZeroLeadingEntry) {
    const std::vector<double> d{0.0, 1.0, 1.0, 0.0};
    const auto x = direct_solve(dense_to_sparse(2, d), std::vector<double>{2.0, 5.0});
    EXPECT_DOUBLE_EQ(x[0], 5.0);
    EXPECT_DOUBLE_EQ(x[1], 2.0);
}

TEST(Direct, SingularMatrixNamesPivot) {
    const std::vector<double> d{1.0, 2.0, 0.0, 2.0, 4.0, 0.0, 0.0, 0.0, 1.0};
    try {
        direct_solve(dense_to_sparse(3, d), std::vector<double>{1.0, 1.0, 1.0});
        FAIL() << "expected SingularMatrixError";
    } catch (const SingularMatrixError& e) {
        EXPECT_EQ(e.pivot(), 1u);
    }
}

TEST(Direct, UniformFlowPinnedMonolithic) {
    const StaggeredGrid g(7, 7);
    const auto s = assemble_monolithic(g, normalize(uniform_field(g, 3.0)), 1.0, uniform_boundary(g, 1.0, 0.0),
                                       AssemblyOptions{true, true});
    const auto x = direct_solve(s.matrix, s.rhs);
    EXPECT_LE(relative_residual(s.matrix, x, s.rhs), 1e-10);
    const FlowFields f = split_solution(g, x);
    for (double u : f.u) EXPECT_NEAR(u, 1.0, 1e-10);
    for (double v : f.v) EXPECT_NEAR(v, 0.0, 1e-10);
}

TEST(Direct, SparsePathMatchesDensePath) {
    // 42x42 grid exceeds the dense limit and goes through SparseLU.
    const StaggeredGrid g(42, 42);
    ASSERT_GT(g.n_total(), kDenseDirectLimit);
    const auto k = normalize(generate_contrast_field(g, 1e2, 1e2, FieldPattern::Lognormal, 3));
    const auto s = assemble_monolithic(g, k, 0.5, uniform_boundary(g, 1.0, 0.0), AssemblyOptions{true, true});
    const auto sparse = direct_solve(s.matrix, s.rhs);
    EXPECT_LE(relative_residual(s.matrix, sparse, s.rhs), 1e-10);
    const auto dense = dense_lu_solve(s.matrix.to_dense(), s.matrix.rows(), s.rhs);
    EXPECT_LE(rel_diff(sparse, dense), 1e-9);
}
