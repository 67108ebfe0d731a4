#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "brinkman/errors.hpp"
#include "brinkman/solvers.hpp"

namespace brinkman {

namespace {

// Row-major LU with partial pivoting. The row permutation is kept so the
// factors can be reused for refinement steps.
class DenseLu {
public:
    DenseLu(std::vector<double> a, std::size_t n) : a_(std::move(a)), n_(n), perm_(n) {
        double scale = 0.0;
        for (double v : a_) scale = std::max(scale, std::abs(v));
        const double tiny = scale * std::numeric_limits<double>::epsilon();
        for (std::size_t k = 0; k < n; ++k) perm_[k] = k;

        for (std::size_t k = 0; k < n; ++k) {
            std::size_t piv = k;
            double best = std::abs(a_[k * n + k]);
            for (std::size_t r = k + 1; r < n; ++r) {
                const double v = std::abs(a_[r * n + k]);
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (!(best > tiny)) {
                throw SingularMatrixError(k, "direct_solve: matrix is numerically singular at pivot " + std::to_string(k));
            }
            if (piv != k) {
                for (std::size_t c = 0; c < n; ++c) std::swap(a_[k * n + c], a_[piv * n + c]);
                std::swap(perm_[k], perm_[piv]);
            }
            const double inv = 1.0 / a_[k * n + k];
            const double* prow = &a_[k * n];
            for (std::size_t r = k + 1; r < n; ++r) {
                const double l = a_[r * n + k] * inv;
                if (l == 0.0) continue;
                a_[r * n + k] = l;
                double* row = &a_[r * n];
                for (std::size_t c = k + 1; c < n; ++c) row[c] -= l * prow[c];
            }
        }
    }

    std::vector<double> solve(std::span<const double> b) const {
        std::vector<double> x(n_);
        for (std::size_t k = 0; k < n_; ++k) x[k] = b[perm_[k]];
        for (std::size_t r = 1; r < n_; ++r) {
            const double* row = &a_[r * n_];
            double s = x[r];
            for (std::size_t c = 0; c < r; ++c) s -= row[c] * x[c];
            x[r] = s;
        }
        for (std::size_t k = n_; k-- > 0;) {
            const double* row = &a_[k * n_];
            double s = x[k];
            for (std::size_t c = k + 1; c < n_; ++c) s -= row[c] * x[c];
            x[k] = s / row[k];
        }
        return x;
    }

private:
    std::vector<double> a_;
    std::size_t n_;
    std::vector<std::size_t> perm_;
};

// SparseLU reports the failing column only inside its message text.
std::size_t failing_column(const std::string& message, std::size_t fallback) {
    const auto end = message.find_last_of("0123456789");
    if (end == std::string::npos) return fallback;
    auto begin = end;
    while (begin > 0 && std::isdigit(static_cast<unsigned char>(message[begin - 1]))) --begin;
    return std::stoul(message.substr(begin, end - begin + 1));
}

class SparseLu {
public:
    using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

    explicit SparseLu(const SparseMatrix& a) : n_(a.rows()) {
        std::vector<Eigen::Triplet<double, int>> t;
        t.reserve(a.nnz());
        for (const auto& e : a.triplets()) t.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col), e.value);
        SpMat m(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
        m.setFromTriplets(t.begin(), t.end());
        m.makeCompressed();
        lu_.compute(m);
        if (lu_.info() != Eigen::Success) {
            throw SingularMatrixError(failing_column(lu_.lastErrorMessage(), a.rows()),
                                      "direct_solve: sparse LU failed: " + lu_.lastErrorMessage());
        }
    }

    std::vector<double> solve(std::span<const double> b) {
        Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
        Eigen::VectorXd x = lu_.solve(rhs);
        if (lu_.info() != Eigen::Success) throw SingularMatrixError(n_, "direct_solve: sparse LU solve failed");
        return {x.data(), x.data() + x.size()};
    }

private:
    std::size_t n_;
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
};

// Fixed-precision refinement from the same factors. It drives the residual to
// componentwise round-off, which the continuity rows need because their
// entries are tiny next to the momentum block at large anna.
template <class Solver>
std::vector<double> refine(const SparseMatrix& a, std::span<const double> b, Solver& solver) {
    std::vector<double> x = solver.solve(b);
    std::vector<double> r(b.size());
    double previous = std::numeric_limits<double>::infinity();
    for (int step = 0; step < 3; ++step) {
        a.multiply(x, r);
        for (std::size_t k = 0; k < r.size(); ++k) r[k] = b[k] - r[k];
        const double rn = norm_inf(r);
        if (rn == 0.0 || !(rn < 0.5 * previous)) break;
        previous = rn;
        const auto dx = solver.solve(r);
        for (std::size_t k = 0; k < x.size(); ++k) x[k] += dx[k];
    }
    return x;
}

}  // namespace

std::vector<double> dense_lu_solve(std::vector<double> a, std::size_t n, std::span<const double> b) {
    if (a.size() != n * n || b.size() != n) throw std::invalid_argument("dense_lu_solve: size mismatch");
    return DenseLu(std::move(a), n).solve(b);
}

std::vector<double> direct_solve(const SparseMatrix& a, std::span<const double> b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("direct_solve: matrix must be square");
    if (b.size() != a.rows()) throw std::invalid_argument("direct_solve: rhs length does not match matrix");
    if (a.rows() <= kDenseDirectLimit) {
        const DenseLu lu(a.to_dense(), a.rows());
        return refine(a, b, lu);
    }
    SparseLu lu(a);
    return refine(a, b, lu);
}

}  // namespace brinkman
