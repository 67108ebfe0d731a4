#include "brinkman/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/LU>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "brinkman/errors.hpp"

namespace brinkman {

namespace {

Eigen::MatrixXd dense_copy(const SparseMatrix& a, const char* who) {
    if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if (a.rows() > kDenseSpectralLimit) {
        throw UnsupportedSizeError(std::string(who) + ": n = " + std::to_string(a.rows()) +
                                   " exceeds the dense limit " + std::to_string(kDenseSpectralLimit));
    }
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto cols = a.row_cols(r);
        const auto vals = a.row_values(r);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols[k])) = vals[k];
        }
    }
    return m;
}

}  // namespace

ConditionNumber condition_number(const SparseMatrix& a, std::size_t nullspace_dim) {
    const Eigen::MatrixXd m = dense_copy(a, "condition_number");
    if (nullspace_dim >= a.rows()) throw std::invalid_argument("condition_number: nullspace_dim >= n");
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
    const Eigen::VectorXd& s = svd.singularValues();  // descending
    ConditionNumber out;
    out.sigma_max = s(0);
    out.sigma_min = s(s.size() - 1 - static_cast<Eigen::Index>(nullspace_dim));
    out.nullspace_excluded = nullspace_dim > 0;

    // The SVD resolves singular values only down to ~eps * sigma_max. For the
    // row-graded saddle-point matrices sigma_min sits below that at large anna,
    // while 1 / ||M^-1||_2 from the LU inverse stays accurate.
    if (nullspace_dim == 0) {
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
        const Eigen::MatrixXd inv = lu.inverse();
        if (inv.allFinite()) {
            const double inv_norm = Eigen::BDCSVD<Eigen::MatrixXd>(inv).singularValues()(0);
            if (inv_norm > 0.0) out.sigma_min = 1.0 / inv_norm;
        }
    }
    out.numerically_singular = out.sigma_min < 1e-14 * out.sigma_max;
    out.kappa = out.sigma_min > 0.0 ? out.sigma_max / out.sigma_min : std::numeric_limits<double>::infinity();
    return out;
}

Spectrum eigen_spectrum(const SparseMatrix& a, std::size_t nullspace_dim) {
    const Eigen::MatrixXd m = dense_copy(a, "eigen_spectrum");
    if (nullspace_dim >= a.rows()) throw std::invalid_argument("eigen_spectrum: nullspace_dim >= n");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigen_spectrum: eigenvalue iteration failed");
    const Eigen::VectorXcd& ev = solver.eigenvalues();

    Spectrum out;
    out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    std::vector<double> moduli;
    moduli.reserve(out.eigenvalues.size());
    for (const auto& l : out.eigenvalues) moduli.push_back(std::abs(l));
    std::sort(moduli.begin(), moduli.end());
    out.min_abs = moduli.front();
    out.max_abs = moduli.back();
    out.min_nonzero_abs = moduli[nullspace_dim];
    return out;
}

}  // namespace brinkman
