#include "brinkman/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace brinkman {

const char* to_string(DofKind kind) noexcept {
    switch (kind) {
        case DofKind::UFace: return "u";
        case DofKind::VFace: return "v";
        case DofKind::Pressure: return "p";
    }
    return "?";
}

StaggeredGrid::StaggeredGrid(int nx, int ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), dx_(0.0), dy_(0.0) {
    if (nx < 1 || ny < 1) {
        throw std::invalid_argument("grid: nx and ny must be >= 1 (got " + std::to_string(nx) + ", " +
                                    std::to_string(ny) + ")");
    }
    if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly)) {
        throw std::invalid_argument("grid: domain extents must be positive and finite");
    }
    dx_ = lx / nx;
    dy_ = ly / ny;
}

StaggeredGrid build_grid(int nx, int ny, double lx, double ly) { return StaggeredGrid(nx, ny, lx, ly); }

std::size_t StaggeredGrid::dof_index(DofKind kind, int i, int j) const {
    auto check = [&](int imax, int jmax) {
        if (i < 0 || i > imax || j < 0 || j > jmax) {
            throw std::out_of_range(std::string("dof_index: (") + std::to_string(i) + ", " + std::to_string(j) +
                                    ") out of range for " + to_string(kind) + "-lattice");
        }
    };
    switch (kind) {
        case DofKind::UFace: check(nx_, ny_ - 1); return u(i, j);
        case DofKind::VFace: check(nx_ - 1, ny_); return v(i, j);
        case DofKind::Pressure: check(nx_ - 1, ny_ - 1); return p(i, j);
    }
    throw std::invalid_argument("dof_index: unknown kind");
}

DofIndex StaggeredGrid::dof_of(std::size_t global) const {
    if (global >= n_total()) {
        throw std::out_of_range("dof_of: index " + std::to_string(global) + " >= " + std::to_string(n_total()));
    }
    if (global < n_u()) {
        const auto w = static_cast<std::size_t>(nx_ + 1);
        return {DofKind::UFace, static_cast<int>(global % w), static_cast<int>(global / w)};
    }
    const auto w = static_cast<std::size_t>(nx_);
    if (global < p_offset()) {
        const std::size_t local = global - v_offset();
        return {DofKind::VFace, static_cast<int>(local % w), static_cast<int>(local / w)};
    }
    const std::size_t local = global - p_offset();
    return {DofKind::Pressure, static_cast<int>(local % w), static_cast<int>(local / w)};
}

bool StaggeredGrid::is_boundary(const DofIndex& dof) const noexcept {
    switch (dof.kind) {
        case DofKind::UFace: return dof.i == 0 || dof.i == nx_;
        case DofKind::VFace: return dof.j == 0 || dof.j == ny_;
        case DofKind::Pressure: return false;
    }
    return false;
}

std::pair<double, double> StaggeredGrid::position(const DofIndex& dof) const noexcept {
    switch (dof.kind) {
        case DofKind::UFace: return {dof.i * dx_, (dof.j + 0.5) * dy_};
        case DofKind::VFace: return {(dof.i + 0.5) * dx_, dof.j * dy_};
        case DofKind::Pressure: return {(dof.i + 0.5) * dx_, (dof.j + 0.5) * dy_};
    }
    return {0.0, 0.0};
}

}  // namespace brinkman
