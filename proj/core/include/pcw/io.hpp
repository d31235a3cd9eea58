#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pcw/compound.hpp"
#include "pcw/geometry.hpp"
#include "pcw/heuristic.hpp"
#include "pcw/slab_optics.hpp"

namespace pcw::io {

inline constexpr int kSchemaVersion = 1;

/// Two-column (wavelength_nm, n) text table; '#' comments ignored, one
/// optional non-numeric header line tolerated.
slab_optics::MaterialModel material_from_file(const std::string &path,
                                              double fallback_n = 3.46);

/// JSON payloads. Every document carries schema_version and the fully
/// resolved configuration (conventions and, for reports, the RNG identity).
std::string vertical_cavity_json(const slab_optics::VerticalCavity &vc, double n,
                                 double lambda_nm);

std::string design_json(const heuristic::DesignResult &result,
                        const heuristic::DesignProblem &problem,
                        std::optional<double> r0_nm);

std::string compound_json(const compound::CompoundDesign &design);

std::string perturbation_json(const compound::PerturbationReport &report,
                              const compound::CompoundDesign &design,
                              const heuristic::HeuristicConfig &config);

/// CSV emitters; '.' decimal separator, '\n' line endings, locale-free.
void write_curve_csv(std::ostream &out, const std::vector<heuristic::CurvePoint> &curve);
void write_perturbation_csv(std::ostream &out, const compound::PerturbationReport &report);

/// Lattice specs recovered from a `design` or `compound` JSON document, as
/// consumed by the geometry exporter.
struct GeometryInput {
    bool compound = false;
    heuristic::LatticeSpec half_1;
    heuristic::LatticeSpec half_2; // only set when compound
};

GeometryInput parse_geometry_input(const std::string &json_text);

/// Perturbation run configuration read from a JSON config file (see README
/// for the schema); CLI flags override individual fields afterwards.
struct PerturbSetup {
    double a_1_nm = 238.0;
    double a_2_nm = 238.0;
    double lambda_1_nm = 925.0;
    double lambda_2_nm = 925.0;
    double h_nm = 160.0;
    double theta_gr_deg = 60.0;
    std::optional<std::string> material_file;
    compound::PerturbationConfig perturbation;
};

PerturbSetup parse_perturb_config(const std::string &json_text);

} // namespace pcw::io
