#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pcw/compound.hpp"
#include "pcw/heuristic.hpp"

namespace pcw::geometry {

/// Hole list for hand-off to external field solvers. The waveguide runs along
/// x at y = 0 (one lattice row removed); compound layouts switch period and
/// radius at x = 0.
struct GeometryExport {
    struct Hole {
        double x_nm = 0.0;
        double y_nm = 0.0;
        double r_nm = 0.0;
    };

    std::vector<Hole> holes;
    double h_nm = 0.0;
    double theta_gr_rad = 0.0;
    bool compound = false;
    double min_x_nm = 0.0, max_x_nm = 0.0;
    double min_y_nm = 0.0, max_y_nm = 0.0;
};

/// Triangular lattice of rows x cols holes with the central row removed.
/// rows counts the removed row, must be odd and >= 3; emits rows*cols - cols
/// holes sorted by (y, x).
GeometryExport build_lattice(const heuristic::LatticeSpec &spec, int rows, int cols);

/// Compound layout: cols must be even; cols/2 columns of each half mirrored
/// about x = 0, each half with its own period, radius and row spacing.
GeometryExport build_compound_lattice(const compound::CompoundDesign &design, int rows,
                                      int cols);

/// Text format: `# h_nm=...`, `# lattice=triangular theta_gr_deg=...`, then one
/// `x_nm y_nm r_nm` line per hole; 6 significant digits, '\n' endings.
void write_geometry(std::ostream &out, const GeometryExport &geo);
void write_geometry_file(const std::string &path, const GeometryExport &geo);

} // namespace pcw::geometry
