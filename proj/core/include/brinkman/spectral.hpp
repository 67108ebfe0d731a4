#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "brinkman/sparse.hpp"

namespace brinkman {

/// Dense decompositions refuse larger matrices.
inline constexpr std::size_t kDenseSpectralLimit = 3000;

struct ConditionNumber {
    double kappa = 1.0;
    double sigma_max = 0.0;
    double sigma_min = 0.0;
    /// sigma_min < 1e-14 sigma_max after any nullspace exclusion.
    bool numerically_singular = false;
    /// The smallest `nullspace_dim` singular values were dropped.
    bool nullspace_excluded = false;
};

/// 2-norm condition number sigma_max / sigma_min from a dense SVD.
/// `nullspace_dim` smallest singular values are ignored (use 1 for an
/// unpinned monolithic matrix). Throws UnsupportedSizeError above the limit.
ConditionNumber condition_number(const SparseMatrix& a, std::size_t nullspace_dim = 0);

struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    double min_abs = 0.0;
    /// Smallest |lambda| once the `nullspace_dim` smallest moduli are set aside.
    double min_nonzero_abs = 0.0;
    double max_abs = 0.0;
};

Spectrum eigen_spectrum(const SparseMatrix& a, std::size_t nullspace_dim = 0);

}  // namespace brinkman
