#include "brinkman/media.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "brinkman/errors.hpp"
#include "brinkman/io.hpp"

namespace brinkman {

namespace {

void check_entries(const std::vector<double>& k, const char* name) {
    for (std::size_t c = 0; c < k.size(); ++c) {
        if (!std::isfinite(k[c]) || !(k[c] > 0.0)) {
            std::ostringstream msg;
            msg << "permeability " << name << "[" << c << "] = " << k[c] << " is not positive and finite";
            throw InvalidFieldError(msg.str());
        }
    }
}

double ratio(const std::vector<double>& k) {
    const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
    return *hi / *lo;
}

}  // namespace

void PermeabilityField::validate() const {
    const auto n = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    if (nx < 1 || ny < 1 || kxx.size() != n || kyy.size() != n) {
        throw InvalidFieldError("permeability field: component sizes do not match nx*ny");
    }
    check_entries(kxx, "kxx");
    check_entries(kyy, "kyy");
}

double PermeabilityField::contrast_x() const { return ratio(kxx); }
double PermeabilityField::contrast_y() const { return ratio(kyy); }

double PermeabilityField::max_entry() const {
    return std::max(*std::max_element(kxx.begin(), kxx.end()), *std::max_element(kyy.begin(), kyy.end()));
}

NormalizedPermeability normalize(const PermeabilityField& field) {
    field.validate();
    NormalizedPermeability out;
    out.nx = field.nx;
    out.ny = field.ny;
    out.kmax = field.max_entry();
    out.kstar_xx.reserve(field.size());
    out.kstar_yy.reserve(field.size());
    for (double k : field.kxx) out.kstar_xx.push_back(k / out.kmax);
    for (double k : field.kyy) out.kstar_yy.push_back(k / out.kmax);
    return out;
}

PermeabilityField uniform_field(const StaggeredGrid& grid, double value) {
    PermeabilityField f{grid.nx(), grid.ny(), std::vector<double>(grid.n_p(), value),
                        std::vector<double>(grid.n_p(), value)};
    f.validate();
    return f;
}

FieldPattern parse_field_pattern(std::string_view name) {
    if (name == "layered") return FieldPattern::Layered;
    if (name == "checkerboard") return FieldPattern::Checkerboard;
    if (name == "lognormal") return FieldPattern::Lognormal;
    throw std::invalid_argument("unknown field pattern '" + std::string(name) + "'");
}

const char* to_string(FieldPattern pattern) noexcept {
    switch (pattern) {
        case FieldPattern::Layered: return "layered";
        case FieldPattern::Checkerboard: return "checkerboard";
        case FieldPattern::Lognormal: return "lognormal";
    }
    return "?";
}

PermeabilityField generate_contrast_field(const StaggeredGrid& grid, double contrast_x, double contrast_y,
                                          FieldPattern pattern, std::uint64_t seed,
                                          const ContrastFieldOptions& options) {
    if (!(contrast_x >= 1.0) || !(contrast_y >= 1.0) || !std::isfinite(contrast_x) || !std::isfinite(contrast_y)) {
        throw std::invalid_argument("generate_contrast_field: contrasts must be finite and >= 1");
    }
    if (!(options.k_min > 0.0) || options.layers < 1) {
        throw std::invalid_argument("generate_contrast_field: k_min must be positive and layers >= 1");
    }
    const int nx = grid.nx();
    const int ny = grid.ny();
    const double lo = options.k_min;
    const double hi_x = lo * contrast_x;
    const double hi_y = lo * contrast_y;

    PermeabilityField f{nx, ny, std::vector<double>(grid.n_p()), std::vector<double>(grid.n_p())};

    switch (pattern) {
        case FieldPattern::Layered: {
            auto band = [&](int idx, int n) { return (static_cast<long>(idx) * options.layers / n) % 2 == 0; };
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    f.kxx[grid.cell(i, j)] = band(j, ny) ? hi_x : lo;
                    f.kyy[grid.cell(i, j)] = band(i, nx) ? hi_y : lo;
                }
            }
            break;
        }
        case FieldPattern::Checkerboard: {
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    const bool even = (i + j) % 2 == 0;
                    f.kxx[grid.cell(i, j)] = even ? hi_x : lo;
                    f.kyy[grid.cell(i, j)] = even ? lo : hi_y;
                }
            }
            break;
        }
        case FieldPattern::Lognormal: {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            std::vector<double> zx(grid.n_p());
            std::vector<double> zy(grid.n_p());
            for (std::size_t c = 0; c < grid.n_p(); ++c) {
                zx[c] = normal(rng);
                zy[c] = normal(rng);
            }
            auto map = [lo](const std::vector<double>& z, double contrast, std::vector<double>& out) {
                const auto [zmin, zmax] = std::minmax_element(z.begin(), z.end());
                const double span = *zmax - *zmin;
                const double log_c = std::log(contrast);
                for (std::size_t c = 0; c < z.size(); ++c) {
                    const double t = span > 0.0 ? (z[c] - *zmin) / span : 0.0;
                    out[c] = lo * std::exp(t * log_c);
                }
            };
            map(zx, contrast_x, f.kxx);
            map(zy, contrast_y, f.kyy);
            break;
        }
    }
    f.validate();
    return f;
}

PermeabilityField parse_field(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int nx = -1;
    int ny = -1;
    PermeabilityField f;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::replace(line.begin(), line.end(), ',', ' ');
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        if (nx < 0) {
            if (!(fields >> nx >> ny) || nx < 1 || ny < 1) {
                throw FormatError("field file line " + std::to_string(line_no) + ": expected header 'nx ny'");
            }
            continue;
        }
        double a = 0.0;
        double b = 0.0;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra)) {
            throw FormatError("field file line " + std::to_string(line_no) + ": expected 'kxx kyy'");
        }
        f.kxx.push_back(a);
        f.kyy.push_back(b);
    }
    if (nx < 0) throw FormatError("field file: missing 'nx ny' header");
    const auto expected = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    if (f.kxx.size() != expected) {
        throw FormatError("field file: header declares " + std::to_string(expected) + " cells but " +
                          std::to_string(f.kxx.size()) + " data lines were found");
    }
    f.nx = nx;
    f.ny = ny;
    f.validate();
    return f;
}

PermeabilityField load_field(const std::filesystem::path& path, const StaggeredGrid& grid) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open field file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    PermeabilityField f = parse_field(buf.str());
    if (f.nx != grid.nx() || f.ny != grid.ny()) {
        throw FormatError("field file '" + path.string() + "' is " + std::to_string(f.nx) + "x" +
                          std::to_string(f.ny) + " but the grid is " + std::to_string(grid.nx()) + "x" +
                          std::to_string(grid.ny()));
    }
    return f;
}

std::string format_field(const PermeabilityField& field) {
    std::ostringstream out;
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    out << field.nx << ' ' << field.ny << '\n';
    for (std::size_t c = 0; c < field.size(); ++c) out << field.kxx[c] << ' ' << field.kyy[c] << '\n';
    return out.str();
}

void write_field(const std::filesystem::path& path, const PermeabilityField& field) {
    field.validate();
    write_file_atomic(path, format_field(field));
}

}  // namespace brinkman
