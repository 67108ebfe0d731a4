#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace brinkman {

/// Physical reference values. Units are documentary: SI is assumed
/// (m, m/s, Pa*s, m^2) but nothing enforces it.
struct ReferenceScales {
    double l_ref = 1.0;   ///< reference length [m]
    double u_ref = 1.0;   ///< reference velocity [m/s]
    double mu = 1.0;      ///< fluid dynamic viscosity [Pa*s]
    double mu_eff = 1.0;  ///< effective (Brinkman) viscosity [Pa*s]
    double k_max = 1.0;   ///< largest permeability entry [m^2]

    /// Throws std::invalid_argument unless every field is positive and finite.
    void validate() const;

    friend bool operator==(const ReferenceScales&, const ReferenceScales&) = default;
};

/// Dimensionless groups of the scaled Stokes-Brinkman problem
///
///   -A lap(u) + K*^-1 u + grad p = f,   div u = 0,
///
/// where A = (mu_eff / mu) * Da and Da = k_max / l_ref^2. Pressure is scaled by
/// p_scale = l_ref * u_ref * mu / k_max.
struct DimensionlessGroups {
    double darcy = 0.0;
    double viscosity_ratio = 1.0;
    double anna = 0.0;
    double p_scale = 1.0;
};

DimensionlessGroups dimensionless_groups(const ReferenceScales& scales);

enum class Regime { Darcy, Brinkman, Stokes };

const char* to_string(Regime regime) noexcept;

struct RegimeThresholds {
    double a_low = 1e-2;
    double a_high = 1e2;

    friend bool operator==(const RegimeThresholds&, const RegimeThresholds&) = default;
};

/// Darcy below a_low, Stokes above a_high, Brinkman in between (inclusive).
/// Throws std::invalid_argument if a_low >= a_high.
Regime classify_regime(double anna, const RegimeThresholds& thresholds = {});
inline Regime classify_regime(const DimensionlessGroups& groups, const RegimeThresholds& thresholds = {}) {
    return classify_regime(groups.anna, thresholds);
}

struct PhysicalFields {
    std::vector<double> u;  ///< face-normal velocities [m/s], u block then v block
    std::vector<double> p;  ///< cell pressures [Pa]
};

/// u = u_ref * u*, p = p_scale * p*. `n_velocity`/`n_pressure` are the sizes
/// the grid expects; a mismatch is an invalid-argument error.
PhysicalFields redimensionalize(std::span<const double> u_star, std::span<const double> p_star,
                                const ReferenceScales& scales, std::size_t n_velocity, std::size_t n_pressure);

/// Inverse of redimensionalize.
PhysicalFields nondimensionalize(std::span<const double> u, std::span<const double> p,
                                 const ReferenceScales& scales);

}  // namespace brinkman
