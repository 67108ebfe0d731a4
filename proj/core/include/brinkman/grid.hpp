#pragma once

#include <cstddef>
#include <utility>

namespace brinkman {

enum class DofKind { UFace, VFace, Pressure };

const char* to_string(DofKind kind) noexcept;

struct DofIndex {
    DofKind kind;
    int i;
    int j;

    friend bool operator==(const DofIndex&, const DofIndex&) = default;
};

/// Uniform MAC grid on [0, lx] x [0, ly].
///
/// u-velocities live on vertical faces (i = 0..nx, j = 0..ny-1), v-velocities
/// on horizontal faces (i = 0..nx-1, j = 0..ny) and pressures at cell centers.
/// Boundary faces are kept as unknowns. Global numbering is block-contiguous
/// [u | v | p], each block row-major with j outer.
class StaggeredGrid {
public:
    StaggeredGrid(int nx, int ny, double lx = 1.0, double ly = 1.0);

    int nx() const noexcept { return nx_; }
    int ny() const noexcept { return ny_; }
    double lx() const noexcept { return lx_; }
    double ly() const noexcept { return ly_; }
    double dx() const noexcept { return dx_; }
    double dy() const noexcept { return dy_; }

    std::size_t n_u() const noexcept { return static_cast<std::size_t>(nx_ + 1) * ny_; }
    std::size_t n_v() const noexcept { return static_cast<std::size_t>(nx_) * (ny_ + 1); }
    std::size_t n_p() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
    std::size_t n_velocity() const noexcept { return n_u() + n_v(); }
    std::size_t n_total() const noexcept { return n_velocity() + n_p(); }

    /// Offsets of the v and p blocks in the global vector.
    std::size_t v_offset() const noexcept { return n_u(); }
    std::size_t p_offset() const noexcept { return n_velocity(); }

    /// Throws std::out_of_range for indices outside the kind's lattice.
    std::size_t dof_index(DofKind kind, int i, int j) const;
    /// Inverse of dof_index. Throws std::out_of_range for global >= n_total().
    DofIndex dof_of(std::size_t global) const;

    // Unchecked block-local helpers used by the assembly loops.
    std::size_t u(int i, int j) const noexcept { return static_cast<std::size_t>(j) * (nx_ + 1) + i; }
    std::size_t v(int i, int j) const noexcept { return v_offset() + static_cast<std::size_t>(j) * nx_ + i; }
    std::size_t p(int i, int j) const noexcept { return p_offset() + static_cast<std::size_t>(j) * nx_ + i; }
    std::size_t cell(int i, int j) const noexcept { return static_cast<std::size_t>(j) * nx_ + i; }

    bool is_boundary(const DofIndex& dof) const noexcept;
    bool is_boundary(std::size_t global) const { return is_boundary(dof_of(global)); }
    std::size_t boundary_velocity_count() const noexcept { return 2 * static_cast<std::size_t>(nx_ + ny_); }

    /// Physical location of a DOF (face midpoint or cell center).
    std::pair<double, double> position(const DofIndex& dof) const noexcept;

    friend bool operator==(const StaggeredGrid& a, const StaggeredGrid& b) noexcept {
        return a.nx_ == b.nx_ && a.ny_ == b.ny_ && a.lx_ == b.lx_ && a.ly_ == b.ly_;
    }

private:
    int nx_;
    int ny_;
    double lx_;
    double ly_;
    double dx_;
    double dy_;
};

/// Validating factory; same contract as the constructor.
StaggeredGrid build_grid(int nx, int ny, double lx = 1.0, double ly = 1.0);

}  // namespace brinkman
