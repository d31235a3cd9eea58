#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcw/numerics.hpp"
#include "pcw/slab_optics.hpp"

namespace pcw::heuristic {

/// One photonic-crystal-waveguide half (or whole) geometry. Lengths in nm,
/// angles in rad.
struct LatticeSpec {
    double theta_gr_rad = 0.0; // lattice angle
    double a_nm = 0.0;         // period along the waveguide axis
    double r_nm = 0.0;         // hole radius
    double h_nm = 0.0;         // membrane thickness
    slab_optics::MaterialModel material;

    void validate() const;
};

/// Unit in which the axial falloff coordinate of the in-cell intensity is
/// measured (equivalently, the assumed dipole-to-cell-entrance distance).
/// `period` is the only scale-invariant choice and the default; `micrometer`
/// and `nanometer` anchor the falloff to an absolute length.
enum class AxialUnit { period, micrometer, nanometer };

/// Wavelength entering the Fresnel-zone count: vacuum or inside the material.
enum class FresnelWavelength { vacuum, in_medium };

/// How the incidence angle on the sloped grating family is measured.
///  - axial_band: the sloped family blocks the emission band hugging the
///    waveguide axis, so incidence is taken from the sloped-plane normal,
///    alpha = (pi/2 - theta_gr) - alpha_avg. Default; calibrated so the
///    (a = 238 nm, lambda = 925 nm) reference solves to r near 80 nm.
///  - transverse_band: incidence measured for light propagating near the
///    transverse direction, alpha = theta_gr - alpha_avg. Infeasible at the
///    reference point (c1 exceeds a).
///  - family_normal: both families near their own normal, alpha = alpha_avg.
enum class BraggIncidence { axial_band, transverse_band, family_normal };

const char *to_string(AxialUnit u);
const char *to_string(FresnelWavelength w);
const char *to_string(BraggIncidence b);
AxialUnit axial_unit_from_string(const std::string &s);
FresnelWavelength fresnel_wavelength_from_string(const std::string &s);
BraggIncidence bragg_incidence_from_string(const std::string &s);

/// Model conventions and solver knobs shared by the design operations.
struct HeuristicConfig {
    AxialUnit axial_unit = AxialUnit::period;
    FresnelWavelength fresnel_wavelength = FresnelWavelength::vacuum;
    BraggIncidence bragg_incidence = BraggIncidence::axial_band;
    std::optional<double> group_velocity_mps; // default: c / n(lambda)
    double damping = 0.5;                     // fixed-point damping
};

/// Diffraction-based estimate of the guided-mode volume in one unit cell.
struct ModeVolumeEstimate {
    double mean_x = 0.0;              // axial mean coordinate, in axial units
    double mean_x_nm = 0.0;
    double fresnel_zones_m = 0.0;     // zone count of the cell entrance slit
    double cornu_u = 0.0;             // sqrt(2 m)
    double intensity_ratio = 0.0;     // clamped to [0, 1]
    double intensity_ratio_raw = 0.0; // unclamped Cornu value, diagnostics
    double cell_volume_nm3 = 0.0;
    double v_eff_nm3 = 0.0;
};

/// Output of the fixed-point design solve.
struct DesignResult {
    LatticeSpec spec; // with the solved radius
    double theta_wg_rad = 0.0;
    double c1_nm = 0.0;
    double c2 = 0.0;
    double f_pcw = 0.0;
    double f_fp = 0.0;
    double beta = 0.0;
    double a_slp_nm = 0.0;
    double a_par_nm = 0.0;
    ModeVolumeEstimate mode_volume;
    numerics::ConvergenceTrace trace;
    HeuristicConfig config; // resolved conventions, echoed into outputs
    std::vector<std::string> warnings;
};

/// Guided-mode Purcell factor from period, mode volume and group velocity.
/// The index enters through spec.material at the given wavelength.
double pcw_purcell(const LatticeSpec &spec, double lambda_nm, double v_eff_nm3,
                   double v_g_mps);

/// beta = F / (1 + F).
double beta_factor(double f);

/// Fresnel-zone / Cornu-spiral estimate of the unit-cell mode volume.
ModeVolumeEstimate mode_volume(const LatticeSpec &spec, double lambda_nm,
                               const HeuristicConfig &config = {});

/// Acceptance half-angle theta_wg in (0, pi/2] balancing the in-plane photon
/// budget: (1 - F_fp/(1+F_fp)) * band(theta_wg) = F_pcw/(1+F_pcw).
double solve_theta_wg(double f_fp, double f_pcw);

/// Slope coefficient c2 as a function of the acceptance and lattice angles.
double theta_wg_to_ratio(double theta_wg_rad, double theta_gr_rad);

/// Algebraically equivalent rearrangement of theta_wg_to_ratio with numerator
/// and denominator negated; kept as an independent cross-check route.
double theta_wg_to_ratio_alt(double theta_wg_rad, double theta_gr_rad);

struct BraggIntercept {
    double c1_nm = 0.0;
    double a_slp_nm = 0.0;
    double a_par_nm = 0.0;
};

/// Emission-weighted mix of the sloped- and parallel-family grating periods.
BraggIntercept bragg_intercept(double lambda_nm, double n, double theta_gr_rad,
                               BraggIncidence incidence = BraggIncidence::axial_band);

/// Inputs of the design solve that stay fixed while the radius iterates.
struct DesignProblem {
    double a_nm = 0.0;
    double lambda_nm = 0.0;
    double h_nm = 0.0;
    slab_optics::MaterialModel material = slab_optics::MaterialModel::gaas();
    double theta_gr_rad = 0.0;
};

/// Fixed-point solve for the hole radius putting the guided-mode enhancement
/// peak at lambda. r0 defaults to a/3. Deterministic for identical inputs.
DesignResult design_radius(const DesignProblem &problem,
                           std::optional<double> r0_nm = std::nullopt,
                           const numerics::Tolerance &tol = {},
                           const HeuristicConfig &config = {});

/// One point of a design curve; infeasible points carry the error instead.
struct CurvePoint {
    double a_nm = 0.0;
    std::optional<DesignResult> result;
    std::string error;

    bool feasible() const { return result.has_value(); }
};

/// design_radius over a sorted period grid, warm-starting each point from the
/// previous feasible solution. Throws only if every point fails.
std::vector<CurvePoint> design_curve(const DesignProblem &problem_sans_a,
                                     const std::vector<double> &a_grid_nm,
                                     const numerics::Tolerance &tol = {},
                                     const HeuristicConfig &config = {});

/// Wavelength at which the design map reproduces spec.r_nm at spec.a_nm: the
/// forward inverse of design_radius. The bracket must contain a sign change of
/// r_solved(lambda) - r; endpoints at which the design is infeasible are
/// shrunk toward the interior before root finding.
double peak_wavelength(const LatticeSpec &spec,
                       std::pair<double, double> lambda_bracket_nm,
                       const numerics::Tolerance &tol = {},
                       const HeuristicConfig &config = {});

} // namespace pcw::heuristic
