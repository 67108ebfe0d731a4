#include "brinkman/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace brinkman {

void ReferenceScales::validate() const {
    const double values[] = {l_ref, u_ref, mu, mu_eff, k_max};
    const char* names[] = {"l_ref", "u_ref", "mu", "mu_eff", "k_max"};
    for (int k = 0; k < 5; ++k) {
        if (!std::isfinite(values[k]) || !(values[k] > 0.0)) {
            throw std::invalid_argument(std::string("reference scale ") + names[k] + " must be positive and finite");
        }
    }
}

DimensionlessGroups dimensionless_groups(const ReferenceScales& scales) {
    scales.validate();
    DimensionlessGroups g;
    g.darcy = scales.k_max / (scales.l_ref * scales.l_ref);
    g.viscosity_ratio = scales.mu_eff / scales.mu;
    g.anna = g.viscosity_ratio * g.darcy;
    g.p_scale = scales.l_ref * scales.u_ref * scales.mu / scales.k_max;
    return g;
}

const char* to_string(Regime regime) noexcept {
    switch (regime) {
        case Regime::Darcy: return "darcy";
        case Regime::Brinkman: return "brinkman";
        case Regime::Stokes: return "stokes";
    }
    return "?";
}

Regime classify_regime(double anna, const RegimeThresholds& thresholds) {
    if (!(thresholds.a_low < thresholds.a_high)) {
        throw std::invalid_argument("classify_regime: a_low must be below a_high");
    }
    if (anna < thresholds.a_low) return Regime::Darcy;
    if (anna > thresholds.a_high) return Regime::Stokes;
    return Regime::Brinkman;
}

PhysicalFields redimensionalize(std::span<const double> u_star, std::span<const double> p_star,
                                const ReferenceScales& scales, std::size_t n_velocity, std::size_t n_pressure) {
    if (u_star.size() != n_velocity || p_star.size() != n_pressure) {
        throw std::invalid_argument("redimensionalize: field sizes do not match the grid");
    }
    const double p_scale = dimensionless_groups(scales).p_scale;
    PhysicalFields out;
    out.u.reserve(u_star.size());
    out.p.reserve(p_star.size());
    for (double x : u_star) out.u.push_back(scales.u_ref * x);
    for (double x : p_star) out.p.push_back(p_scale * x);
    return out;
}

PhysicalFields nondimensionalize(std::span<const double> u, std::span<const double> p,
                                 const ReferenceScales& scales) {
    const double p_scale = dimensionless_groups(scales).p_scale;
    PhysicalFields out;
    out.u.reserve(u.size());
    out.p.reserve(p.size());
    for (double x : u) out.u.push_back(x / scales.u_ref);
    for (double x : p) out.p.push_back(x / p_scale);
    return out;
}

}  // namespace brinkman
