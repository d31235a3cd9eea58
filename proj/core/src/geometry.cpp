#include "pcw/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

#include "pcw/constants.hpp"

namespace pcw::geometry {

namespace {

void check_grid(int rows, int cols, bool compound) {
    if (rows < 3 || rows % 2 == 0)
        throw DomainError("geometry: rows must be odd and >= 3 (the central row is removed)");
    if (cols < 1) throw DomainError("geometry: cols must be >= 1");
    if (compound && cols % 2 != 0)
        throw DomainError("geometry: compound layouts need an even number of columns");
}

// Rows of one half on one side of the waveguide; side = -1 emits columns at
// negative x (half 1), side = +1 at positive x. Column index j counts outward
// from the seam; odd rows are staggered by half a period away from the seam.
void emit_half(std::vector<GeometryExport::Hole> &holes, const heuristic::LatticeSpec &spec,
               int rows, int cols_per_side, int side) {
    const double row_pitch = 0.5 * spec.a_nm * std::tan(spec.theta_gr_rad);
    const int half_rows = (rows - 1) / 2;
    for (int k = -half_rows; k <= half_rows; ++k) {
        if (k == 0) continue; // the waveguide
        const double stagger = (std::abs(k) % 2 == 1) ? 0.5 : 0.0;
        for (int j = 0; j < cols_per_side; ++j) {
            GeometryExport::Hole h;
            h.x_nm = side * (static_cast<double>(j) + 0.5 + stagger) * spec.a_nm;
            h.y_nm = k * row_pitch;
            h.r_nm = spec.r_nm;
            holes.push_back(h);
        }
    }
}

void finalize(GeometryExport &geo) {
    std::sort(geo.holes.begin(), geo.holes.end(), [](const auto &a, const auto &b) {
        if (a.y_nm != b.y_nm) return a.y_nm < b.y_nm;
        return a.x_nm < b.x_nm;
    });
    if (!geo.holes.empty()) {
        geo.min_x_nm = geo.max_x_nm = geo.holes.front().x_nm;
        geo.min_y_nm = geo.max_y_nm = geo.holes.front().y_nm;
        for (const auto &h : geo.holes) {
            geo.min_x_nm = std::min(geo.min_x_nm, h.x_nm - h.r_nm);
            geo.max_x_nm = std::max(geo.max_x_nm, h.x_nm + h.r_nm);
            geo.min_y_nm = std::min(geo.min_y_nm, h.y_nm - h.r_nm);
            geo.max_y_nm = std::max(geo.max_y_nm, h.y_nm + h.r_nm);
        }
    }
}

} // namespace

GeometryExport build_lattice(const heuristic::LatticeSpec &spec, int rows, int cols) {
    spec.validate();
    check_grid(rows, cols, false);

    GeometryExport geo;
    geo.h_nm = spec.h_nm;
    geo.theta_gr_rad = spec.theta_gr_rad;
    geo.compound = false;

    // Uniform layout: columns centred on x = 0.
    const double row_pitch = 0.5 * spec.a_nm * std::tan(spec.theta_gr_rad);
    const int half_rows = (rows - 1) / 2;
    const double x0 = -0.5 * (cols - 1) * spec.a_nm;
    for (int k = -half_rows; k <= half_rows; ++k) {
        if (k == 0) continue;
        const double stagger = (std::abs(k) % 2 == 1) ? 0.5 * spec.a_nm : 0.0;
        for (int j = 0; j < cols; ++j) {
            geo.holes.push_back({x0 + j * spec.a_nm + stagger, k * row_pitch, spec.r_nm});
        }
    }
    finalize(geo);
    return geo;
}

GeometryExport build_compound_lattice(const compound::CompoundDesign &design, int rows,
                                      int cols) {
    check_grid(rows, cols, true);
    design.half_1.spec.validate();
    design.half_2.spec.validate();

    GeometryExport geo;
    geo.h_nm = design.half_1.spec.h_nm;
    geo.theta_gr_rad = design.half_1.spec.theta_gr_rad;
    geo.compound = true;

    emit_half(geo.holes, design.half_1.spec, rows, cols / 2, -1);
    emit_half(geo.holes, design.half_2.spec, rows, cols / 2, +1);
    finalize(geo);
    return geo;
}

namespace {

// 6 significant digits, locale-independent.
std::string format_length(double v) {
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

} // namespace

void write_geometry(std::ostream &out, const GeometryExport &geo) {
    out << "# h_nm=" << format_length(geo.h_nm) << "\n";
    out << "# lattice=triangular theta_gr_deg="
        << format_length(constants::radians_to_degrees(geo.theta_gr_rad)) << "\n";
    for (const auto &h : geo.holes) {
        out << format_length(h.x_nm) << " " << format_length(h.y_nm) << " "
            << format_length(h.r_nm) << "\n";
    }
}

void write_geometry_file(const std::string &path, const GeometryExport &geo) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("geometry: cannot open '" + path + "' for writing");
    write_geometry(out, geo);
}

} // namespace pcw::geometry
