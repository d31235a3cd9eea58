#include "pcw/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pcw/constants.hpp"
#include "pcw/radiometry.hpp"

namespace pcw::heuristic {

using constants::pi;

void LatticeSpec::validate() const {
    if (!(h_nm > 0.0)) throw DomainError("LatticeSpec: h must be positive");
    if (!(a_nm > 0.0)) throw DomainError("LatticeSpec: a must be positive");
    if (!(theta_gr_rad > 0.0 && theta_gr_rad < 0.5 * pi))
        throw DomainError("LatticeSpec: theta_gr must be in (0, pi/2)");
    if (!(r_nm > 0.0 && r_nm < 0.5 * a_nm))
        throw DomainError("LatticeSpec: requires 0 < r < a/2");
    if (!(a_nm * std::tan(theta_gr_rad) > 2.0 * r_nm))
        throw DomainError("LatticeSpec: requires a tan(theta_gr) > 2 r (open entrance slit)");
}

const char *to_string(AxialUnit u) {
    switch (u) {
    case AxialUnit::period: return "period";
    case AxialUnit::micrometer: return "micrometer";
    case AxialUnit::nanometer: return "nanometer";
    }
    return "?";
}

const char *to_string(FresnelWavelength w) {
    return w == FresnelWavelength::vacuum ? "vacuum" : "in_medium";
}

const char *to_string(BraggIncidence b) {
    switch (b) {
    case BraggIncidence::axial_band: return "axial_band";
    case BraggIncidence::transverse_band: return "transverse_band";
    case BraggIncidence::family_normal: return "family_normal";
    }
    return "?";
}

AxialUnit axial_unit_from_string(const std::string &s) {
    if (s == "period") return AxialUnit::period;
    if (s == "micrometer") return AxialUnit::micrometer;
    if (s == "nanometer") return AxialUnit::nanometer;
    throw DomainError("unknown axial unit '" + s + "' (period|micrometer|nanometer)");
}

FresnelWavelength fresnel_wavelength_from_string(const std::string &s) {
    if (s == "vacuum") return FresnelWavelength::vacuum;
    if (s == "in_medium") return FresnelWavelength::in_medium;
    throw DomainError("unknown fresnel wavelength '" + s + "' (vacuum|in_medium)");
}

BraggIncidence bragg_incidence_from_string(const std::string &s) {
    if (s == "axial_band") return BraggIncidence::axial_band;
    if (s == "transverse_band") return BraggIncidence::transverse_band;
    if (s == "family_normal") return BraggIncidence::family_normal;
    throw DomainError("unknown bragg incidence '" + s +
                      "' (axial_band|transverse_band|family_normal)");
}

double pcw_purcell(const LatticeSpec &spec, double lambda_nm, double v_eff_nm3,
                   double v_g_mps) {
    if (!(lambda_nm > 0.0)) throw DomainError("pcw_purcell: lambda must be positive");
    if (!(v_eff_nm3 > 0.0)) throw DomainError("pcw_purcell: V_eff must be positive");
    if (!(spec.a_nm > 0.0)) throw DomainError("pcw_purcell: a must be positive");
    if (v_g_mps == 0.0)
        throw InfeasibleError("v_g", "pcw_purcell: v_g = 0 makes the Purcell factor singular");
    if (!(v_g_mps > 0.0)) throw DomainError("pcw_purcell: v_g must be positive");

    const double c = constants::speed_of_light_mps;
    const double n = spec.material.index_at(lambda_nm);
    const double omega_d = 2.0 * pi * c / (lambda_nm * constants::nm_to_m);
    const double eps32 = n * n * n;
    const double a_m = spec.a_nm * constants::nm_to_m;
    const double v_eff_m3 = v_eff_nm3 * constants::nm3_to_m3;
    return 3.0 * pi * c * c * c * a_m / (v_eff_m3 * omega_d * omega_d * eps32 * v_g_mps);
}

double beta_factor(double f) {
    if (f < 0.0) throw DomainError("beta_factor: F must be >= 0");
    return f / (1.0 + f);
}

ModeVolumeEstimate mode_volume(const LatticeSpec &spec, double lambda_nm,
                               const HeuristicConfig &config) {
    if (!(lambda_nm > 0.0)) throw DomainError("mode_volume: lambda must be positive");
    if (!(spec.a_nm > 0.0 && spec.h_nm > 0.0 && spec.r_nm >= 0.0))
        throw DomainError("mode_volume: lengths must be positive");
    if (!(spec.theta_gr_rad > 0.0 && spec.theta_gr_rad < 0.5 * pi))
        throw DomainError("mode_volume: theta_gr must be in (0, pi/2)");

    const double transverse = spec.a_nm * std::tan(spec.theta_gr_rad);
    const double slit_nm = transverse - 2.0 * spec.r_nm;
    if (slit_nm < 0.0) {
        std::ostringstream msg;
        msg << "mode_volume: entrance slit width " << slit_nm << " nm is negative (a tan(theta_gr) = "
            << transverse << " nm < 2 r = " << 2.0 * spec.r_nm << " nm)";
        throw InfeasibleError("slit_width", msg.str());
    }

    ModeVolumeEstimate mv;
    double unit_nm = 0.0;
    switch (config.axial_unit) {
    case AxialUnit::period: unit_nm = spec.a_nm; break;
    case AxialUnit::micrometer: unit_nm = constants::um_to_nm; break;
    case AxialUnit::nanometer: unit_nm = 1.0; break;
    }
    // Cell-averaged 1/(x+1)^2 falloff equals the pointwise value at mean_x.
    const double a_units = spec.a_nm / unit_nm;
    mv.mean_x = std::sqrt(a_units + 1.0) - 1.0;
    mv.mean_x_nm = mv.mean_x * unit_nm;

    const double n = spec.material.index_at(lambda_nm);
    const double lambda_eff_nm =
        config.fresnel_wavelength == FresnelWavelength::vacuum ? lambda_nm : lambda_nm / n;
    mv.fresnel_zones_m = slit_nm * slit_nm / (4.0 * lambda_eff_nm * mv.mean_x_nm);
    mv.cornu_u = std::sqrt(2.0 * mv.fresnel_zones_m);

    const auto cs = numerics::fresnel_cs(mv.cornu_u);
    // Normalized against the open-aperture value C(inf)^2 + S(inf)^2 = 1/2.
    mv.intensity_ratio_raw = 2.0 * (cs.c * cs.c + cs.s * cs.s);
    mv.intensity_ratio = std::min(mv.intensity_ratio_raw, 1.0);

    mv.cell_volume_nm3 = (spec.a_nm * transverse - pi * spec.r_nm * spec.r_nm) * spec.h_nm;
    if (!(mv.cell_volume_nm3 > 0.0))
        throw InfeasibleError("cell_volume", "mode_volume: unit-cell volume is not positive");
    mv.v_eff_nm3 = mv.intensity_ratio * mv.cell_volume_nm3;
    return mv;
}

double solve_theta_wg(double f_fp, double f_pcw) {
    if (f_fp < 0.0 || f_pcw < 0.0)
        throw DomainError("solve_theta_wg: Purcell factors must be >= 0");

    const double stay_inside = 1.0 - f_fp / (1.0 + f_fp);
    const double guided = f_pcw / (1.0 + f_pcw);
    if (guided == 0.0) return 0.0;

    // band(theta) = (3 sin - sin^3)/2 reaches 1 at theta = pi/2.
    const double target = guided / stay_inside;
    if (target > 1.0) {
        std::ostringstream msg;
        msg << "solve_theta_wg: required band fraction " << target
            << " exceeds 1 (guided share " << guided << " > in-plane share " << stay_inside
            << "); no acceptance angle exists";
        throw InfeasibleError("band_fraction", msg.str());
    }
    if (target == 1.0) return 0.5 * pi;

    const auto band = [](double t) {
        const double s = std::sin(t);
        return 0.5 * (3.0 * s - s * s * s);
    };
    const numerics::Tolerance tol{1e-14, 1e-14, 200};
    return numerics::find_root([&](double t) { return band(t) - target; }, 0.0, 0.5 * pi, tol);
}

double theta_wg_to_ratio(double theta_wg_rad, double theta_gr_rad) {
    if (!(theta_wg_rad > 0.0 && theta_wg_rad < 0.5 * pi))
        throw DomainError("theta_wg_to_ratio: theta_wg must be in (0, pi/2)");
    if (!(theta_gr_rad > 0.0 && theta_gr_rad < 0.5 * pi))
        throw DomainError("theta_wg_to_ratio: theta_gr must be in (0, pi/2)");

    const double alpha = 0.25 * pi - 0.5 * theta_wg_rad;
    const double num = std::cos(alpha) - std::tan(theta_wg_rad) * std::sin(alpha);
    const double den = 0.5 * (std::tan(theta_gr_rad) - std::tan(theta_wg_rad));
    if (den == 0.0)
        throw InfeasibleError("c2", "theta_wg_to_ratio: tan(theta_gr)/2 = tan(theta_wg)/2 pole");
    return num / den;
}

double theta_wg_to_ratio_alt(double theta_wg_rad, double theta_gr_rad) {
    if (!(theta_wg_rad > 0.0 && theta_wg_rad < 0.5 * pi))
        throw DomainError("theta_wg_to_ratio_alt: theta_wg must be in (0, pi/2)");
    if (!(theta_gr_rad > 0.0 && theta_gr_rad < 0.5 * pi))
        throw DomainError("theta_wg_to_ratio_alt: theta_gr must be in (0, pi/2)");

    const double alpha = 0.25 * pi - 0.5 * theta_wg_rad;
    const double num = std::tan(theta_wg_rad) * std::sin(alpha) - std::cos(alpha);
    const double den = 0.5 * (std::tan(theta_wg_rad) - std::tan(theta_gr_rad));
    if (den == 0.0)
        throw InfeasibleError("c2", "theta_wg_to_ratio_alt: tan(theta_wg)/2 = tan(theta_gr)/2 pole");
    return num / den;
}

BraggIntercept bragg_intercept(double lambda_nm, double n, double theta_gr_rad,
                               BraggIncidence incidence) {
    if (!(lambda_nm > 0.0)) throw DomainError("bragg_intercept: lambda must be positive");
    if (!(n > 1.0)) throw DomainError("bragg_intercept: n must be > 1");
    if (!(theta_gr_rad > 0.0 && theta_gr_rad < 0.5 * pi))
        throw DomainError("bragg_intercept: theta_gr must be in (0, pi/2)");

    const double alpha_avg = radiometry::average_emission_angle();
    double alpha_slp = 0.0;
    switch (incidence) {
    case BraggIncidence::axial_band: alpha_slp = 0.5 * pi - theta_gr_rad - alpha_avg; break;
    case BraggIncidence::transverse_band: alpha_slp = theta_gr_rad - alpha_avg; break;
    case BraggIncidence::family_normal: alpha_slp = alpha_avg; break;
    }

    const double cos_slp = std::cos(alpha_slp);
    if (cos_slp <= 0.0) {
        std::ostringstream msg;
        msg << "bragg_intercept: sloped-family incidence " << alpha_slp
            << " rad has non-positive cosine";
        throw InfeasibleError("sloped_incidence", msg.str());
    }

    BraggIntercept bi;
    bi.a_slp_nm = lambda_nm / (2.0 * n * std::sin(theta_gr_rad) * cos_slp);
    bi.a_par_nm = lambda_nm / (n * std::tan(theta_gr_rad) * std::cos(alpha_avg));
    const auto eta = radiometry::bragg_family_fractions(theta_gr_rad);
    bi.c1_nm = eta.par * bi.a_par_nm + eta.slp * bi.a_slp_nm;
    return bi;
}

namespace {

struct ChainState {
    ModeVolumeEstimate mv;
    double f_pcw = 0.0;
    double theta_wg = 0.0;
    double c2 = 0.0;
};

// One pass of the per-radius part of the design chain at radius r.
ChainState evaluate_chain(const DesignProblem &p, double r_nm, double f_fp, double v_g,
                          const HeuristicConfig &config) {
    ChainState st;
    LatticeSpec spec{p.theta_gr_rad, p.a_nm, r_nm, p.h_nm, p.material};
    st.mv = mode_volume(spec, p.lambda_nm, config);
    st.f_pcw = pcw_purcell(spec, p.lambda_nm, st.mv.v_eff_nm3, v_g);
    st.theta_wg = solve_theta_wg(f_fp, st.f_pcw);
    st.c2 = theta_wg_to_ratio(st.theta_wg, p.theta_gr_rad);
    return st;
}

} // namespace

DesignResult design_radius(const DesignProblem &problem, std::optional<double> r0_nm,
                           const numerics::Tolerance &tol, const HeuristicConfig &config) {
    tol.validate();
    if (!(problem.a_nm > 0.0 && problem.lambda_nm > 0.0 && problem.h_nm > 0.0))
        throw DomainError("design_radius: lengths must be positive");
    if (!(problem.theta_gr_rad > 0.0 && problem.theta_gr_rad < 0.5 * pi))
        throw DomainError("design_radius: theta_gr must be in (0, pi/2)");
    if (!(config.damping > 0.0 && config.damping <= 1.0))
        throw DomainError("design_radius: damping must be in (0, 1]");

    const double r0 = r0_nm.value_or(problem.a_nm / 3.0);
    if (!(r0 > 0.0 && r0 < 0.5 * problem.a_nm))
        throw DomainError("design_radius: r0 must lie in (0, a/2)");

    const double n = problem.material.index_at(problem.lambda_nm);
    const auto vc = slab_optics::vertical_cavity(problem.h_nm, n, problem.lambda_nm);
    const auto bragg =
        bragg_intercept(problem.lambda_nm, n, problem.theta_gr_rad, config.bragg_incidence);
    const double v_g =
        config.group_velocity_mps.value_or(constants::speed_of_light_mps / n);

    DesignResult out;
    out.config = config;
    out.f_fp = vc.f_fp;
    out.c1_nm = bragg.c1_nm;
    out.a_slp_nm = bragg.a_slp_nm;
    out.a_par_nm = bragg.a_par_nm;

    // The radius map for the shared damped fixed-point kernel; infeasible
    // iterates abort with a structured diagnosis instead of being projected.
    int iteration = 0;
    const auto radius_map = [&](double r_cur) {
        const ChainState st = evaluate_chain(problem, r_cur, vc.f_fp, v_g, config);
        const double r_new = (problem.a_nm - bragg.c1_nm) / st.c2;
        if (!(r_new > 0.0 && r_new < 0.5 * problem.a_nm)) {
            std::ostringstream msg;
            msg << "design_radius: iterated radius " << r_new << " nm outside (0, "
                << 0.5 * problem.a_nm << ") nm at iteration " << iteration
                << " (c1 = " << bragg.c1_nm << " nm, c2 = " << st.c2 << ")";
            throw InfeasibleError("r_new", msg.str());
        }
        ++iteration;
        return r_new;
    };

    double r = 0.0;
    try {
        const auto fp = numerics::fixed_point(radius_map, r0, tol, config.damping);
        out.trace = fp.trace;
        r = fp.value;
    } catch (const numerics::NonConvergenceError &e) {
        throw numerics::NonConvergenceError(e.trace(),
                                            std::string("design_radius: ") + e.what());
    }

    // Re-evaluate the chain at the converged radius for the reported fields.
    const ChainState st = evaluate_chain(problem, r, vc.f_fp, v_g, config);
    out.spec = LatticeSpec{problem.theta_gr_rad, problem.a_nm, r, problem.h_nm, problem.material};
    out.spec.validate();
    out.mode_volume = st.mv;
    out.f_pcw = st.f_pcw;
    out.theta_wg_rad = st.theta_wg;
    out.c2 = st.c2;
    out.beta = beta_factor(st.f_pcw);
    if (out.c2 <= 2.0) {
        std::ostringstream msg;
        msg << "c2 = " << out.c2 << " <= 2: as a pure a/r ratio this would violate r < a/2";
        out.warnings.push_back(msg.str());
    }
    return out;
}

std::vector<CurvePoint> design_curve(const DesignProblem &problem_sans_a,
                                     const std::vector<double> &a_grid_nm,
                                     const numerics::Tolerance &tol,
                                     const HeuristicConfig &config) {
    if (a_grid_nm.empty()) throw DomainError("design_curve: empty period grid");
    if (!std::is_sorted(a_grid_nm.begin(), a_grid_nm.end()))
        throw DomainError("design_curve: period grid must be sorted");

    std::vector<CurvePoint> curve;
    curve.reserve(a_grid_nm.size());
    std::optional<double> warm;
    std::size_t failures = 0;
    for (const double a : a_grid_nm) {
        DesignProblem p = problem_sans_a;
        p.a_nm = a;
        CurvePoint pt;
        pt.a_nm = a;
        // Warm starts must stay inside the new period's feasible radius range.
        std::optional<double> r0 = warm;
        if (r0 && !(*r0 > 0.0 && *r0 < 0.5 * a)) r0.reset();
        try {
            pt.result = design_radius(p, r0, tol, config);
            warm = pt.result->spec.r_nm;
        } catch (const Error &e) {
            pt.error = e.what();
            ++failures;
        }
        curve.push_back(std::move(pt));
    }
    if (failures == a_grid_nm.size())
        throw InfeasibleError("curve", "design_curve: every grid point is infeasible; last: " +
                                           curve.back().error);
    return curve;
}

double peak_wavelength(const LatticeSpec &spec, std::pair<double, double> lambda_bracket_nm,
                       const numerics::Tolerance &tol, const HeuristicConfig &config) {
    spec.validate();
    double lo = lambda_bracket_nm.first;
    double hi = lambda_bracket_nm.second;
    if (!(lo > 0.0 && hi > lo)) throw DomainError("peak_wavelength: invalid bracket");

    DesignProblem p{spec.a_nm, 0.0, spec.h_nm, spec.material, spec.theta_gr_rad};
    std::optional<double> warm; // last converged radius seeds the next solve
    const auto g = [&](double lambda) {
        p.lambda_nm = lambda;
        std::optional<double> r0 = warm;
        if (r0 && !(*r0 > 0.0 && *r0 < 0.5 * p.a_nm)) r0.reset();
        const DesignResult d = design_radius(p, r0, tol, config);
        warm = d.spec.r_nm;
        return d.spec.r_nm - spec.r_nm;
    };

    // The design map is feasible on a wavelength interval; pull infeasible
    // endpoints inward until they evaluate, then bracket-root as usual.
    const auto shrink = [&](double &x, double toward) {
        for (int k = 0; k < 64; ++k) {
            try {
                return g(x);
            } catch (const InfeasibleError &) {
                x += 0.25 * (toward - x);
            }
        }
        throw BracketError("peak_wavelength: no feasible endpoint found; widen or shift the scan");
    };
    const double glo = shrink(lo, hi);
    const double ghi = shrink(hi, lo);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (glo * ghi > 0.0) {
        std::ostringstream msg;
        msg << "peak_wavelength: no sign change of r(lambda) - r on [" << lo << ", " << hi
            << "] nm (" << glo << " vs " << ghi << "); widen the scan";
        throw BracketError(msg.str());
    }
    return numerics::find_root(g, lo, hi, glo, ghi, tol);
}

} // namespace pcw::heuristic
