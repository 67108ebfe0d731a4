#include "brinkman/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace brinkman {

Preconditioner parse_preconditioner(std::string_view name) {
    if (name == "none") return Preconditioner::None;
    if (name == "jacobi") return Preconditioner::Jacobi;
    throw std::invalid_argument("unknown preconditioner '" + std::string(name) + "'");
}

const char* to_string(Preconditioner p) noexcept {
    return p == Preconditioner::Jacobi ? "jacobi" : "none";
}

SolverConfig SolverConfig::resolved(std::size_t n) const {
    SolverConfig c = *this;
    if (c.maxit == 0) c.maxit = std::max<std::size_t>(n, 1);
    if (c.restart == 0) c.restart = c.maxit;
    if (!(c.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
    if (c.restart > c.maxit) throw std::invalid_argument("solver restart must not exceed maxit");
    return c;
}

std::vector<double> apply_jacobi(const SparseMatrix& a) {
    std::vector<double> d = a.diagonal_values();
    for (double& v : d) v = v != 0.0 ? 1.0 / v : 1.0;
    return d;
}

namespace {

// Givens rotation zeroing b in (a, b).
void make_rotation(double a, double b, double& c, double& s) {
    if (b == 0.0) {
        c = 1.0;
        s = 0.0;
    } else if (std::abs(b) > std::abs(a)) {
        const double t = a / b;
        s = 1.0 / std::sqrt(1.0 + t * t);
        c = t * s;
    } else {
        const double t = b / a;
        c = 1.0 / std::sqrt(1.0 + t * t);
        s = t * c;
    }
}

}  // namespace

SolveResult gmres_solve(const SparseMatrix& a_in, std::span<const double> b_in, const SolverConfig& config_in) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = a_in.rows();
    if (a_in.cols() != n) throw std::invalid_argument("gmres_solve: matrix must be square");
    if (b_in.size() != n) throw std::invalid_argument("gmres_solve: rhs length does not match matrix");
    const SolverConfig config = config_in.resolved(n);

    // Left preconditioning is applied by scaling rows once.
    SparseMatrix scaled;
    std::vector<double> b(b_in.begin(), b_in.end());
    const SparseMatrix* a = &a_in;
    if (config.preconditioner == Preconditioner::Jacobi) {
        const std::vector<double> d = apply_jacobi(a_in);
        scaled = a_in.row_scaled(d);
        a = &scaled;
        for (std::size_t k = 0; k < n; ++k) b[k] *= d[k];
    }

    SolveResult result;
    result.x.assign(n, 0.0);
    SolveReport& rep = result.report;

    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        rep.converged = true;
        rep.final_relres = 0.0;
        return result;
    }

    const std::size_t m = config.restart;
    std::vector<std::vector<double>> basis;
    basis.reserve(m + 1);
    // Column-major upper Hessenberg, column k holds h(0..k+1, k).
    std::vector<std::vector<double>> h;
    h.reserve(m);
    std::vector<double> cs(m);
    std::vector<double> sn(m);
    std::vector<double> g(m + 1);
    std::vector<double> r(n);
    std::vector<double> w(n);

    auto true_relres = [&]() {
        a->multiply(result.x, r);
        for (std::size_t k = 0; k < n; ++k) r[k] = b[k] - r[k];
        return norm2(r) / bnorm;
    };

    double relres = true_relres();
    while (relres > config.tol && rep.iterations < config.maxit && !rep.breakdown) {
        const double beta = relres * bnorm;
        basis.clear();
        h.clear();
        basis.emplace_back(n);
        for (std::size_t k = 0; k < n; ++k) basis[0][k] = r[k] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        std::size_t k = 0;
        for (; k < m && rep.iterations < config.maxit; ++k) {
            a->multiply(basis[k], w);
            const double wnorm0 = norm2(w);
            std::vector<double> col(k + 2, 0.0);
            for (int pass = 0; pass < (config.reorthogonalize ? 2 : 1); ++pass) {
                for (std::size_t q = 0; q <= k; ++q) {
                    const double hq = dot(w, basis[q]);
                    col[q] += hq;
                    const auto& vq = basis[q];
                    for (std::size_t e = 0; e < n; ++e) w[e] -= hq * vq[e];
                }
            }
            const double hnext = norm2(w);
            col[k + 1] = hnext;

            for (std::size_t q = 0; q < k; ++q) {
                const double t = cs[q] * col[q] + sn[q] * col[q + 1];
                col[q + 1] = -sn[q] * col[q] + cs[q] * col[q + 1];
                col[q] = t;
            }
            make_rotation(col[k], col[k + 1], cs[k], sn[k]);
            col[k] = cs[k] * col[k] + sn[k] * col[k + 1];
            col[k + 1] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            h.push_back(std::move(col));

            ++rep.iterations;
            const double estimate = std::abs(g[k + 1]) / bnorm;
            rep.residual_history.push_back(estimate);

            const bool lucky = hnext <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(wnorm0, 1e-300);
            if (lucky) {
                rep.breakdown = true;
                ++k;
                break;
            }
            if (estimate <= config.tol) {
                ++k;
                break;
            }
            basis.emplace_back(n);
            for (std::size_t e = 0; e < n; ++e) basis[k + 1][e] = w[e] / hnext;
        }

        // Back substitution on the rotated k x k triangle.
        std::vector<double> y(k, 0.0);
        for (std::size_t q = k; q-- > 0;) {
            double s = g[q];
            for (std::size_t c = q + 1; c < k; ++c) s -= h[c][q] * y[c];
            y[q] = h[q][q] != 0.0 ? s / h[q][q] : 0.0;
        }
        for (std::size_t q = 0; q < k; ++q) {
            const auto& vq = basis[q];
            for (std::size_t e = 0; e < n; ++e) result.x[e] += y[q] * vq[e];
        }
        relres = true_relres();
    }

    rep.final_relres = relres;
    rep.converged = relres <= config.tol;
    rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace brinkman
