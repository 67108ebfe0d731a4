#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "brinkman/grid.hpp"

namespace brinkman {

/// Cell-centered diagonal permeability tensor diag(kxx, kyy), row-major with j outer.
struct PermeabilityField {
    int nx = 0;
    int ny = 0;
    std::vector<double> kxx;
    std::vector<double> kyy;

    std::size_t size() const noexcept { return kxx.size(); }

    /// Throws InvalidFieldError unless every entry is positive and finite and
    /// both components have nx*ny entries.
    void validate() const;

    double contrast_x() const;
    double contrast_y() const;
    double max_entry() const;

    friend bool operator==(const PermeabilityField&, const PermeabilityField&) = default;
};

/// K* = K / K_max, with K_max taken over both components.
struct NormalizedPermeability {
    int nx = 0;
    int ny = 0;
    std::vector<double> kstar_xx;
    std::vector<double> kstar_yy;
    double kmax = 1.0;
};

NormalizedPermeability normalize(const PermeabilityField& field);

/// Homogeneous field with kxx = kyy = value.
PermeabilityField uniform_field(const StaggeredGrid& grid, double value = 1.0);

enum class FieldPattern { Layered, Checkerboard, Lognormal };

FieldPattern parse_field_pattern(std::string_view name);
const char* to_string(FieldPattern pattern) noexcept;

struct ContrastFieldOptions {
    /// Smallest permeability; the largest is k_min * contrast.
    double k_min = 1.0;
    /// Number of alternating bands for the layered pattern.
    int layers = 5;
};

/// Manufactures a field with max/min equal to the requested contrast per component.
///
/// Layered: kxx alternates in horizontal bands (by row), kyy in vertical bands
/// (by column). Checkerboard: kxx and kyy alternate cell by cell. Lognormal:
/// independent standard normal draw per cell, mapped affinely in log space onto
/// [log k_min, log(k_min * contrast)]. All patterns are deterministic in `seed`;
/// the seed only affects lognormal.
PermeabilityField generate_contrast_field(const StaggeredGrid& grid, double contrast_x, double contrast_y,
                                          FieldPattern pattern, std::uint64_t seed,
                                          const ContrastFieldOptions& options = {});

/// Text format: `nx ny` header, then nx*ny lines `kxx kyy` (row-major, j outer).
/// Lines starting with '#' are comments; commas are accepted as separators.
PermeabilityField load_field(const std::filesystem::path& path, const StaggeredGrid& grid);
PermeabilityField parse_field(std::string_view text);
std::string format_field(const PermeabilityField& field);
void write_field(const std::filesystem::path& path, const PermeabilityField& field);

}  // namespace brinkman
