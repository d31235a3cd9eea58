// pcw: command-line front end for the photonic-crystal-waveguide design kit.
//
// Exit codes: 0 success, 2 validation error, 3 model infeasibility,
// 4 non-convergence.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pcw/compound.hpp"
#include "pcw/constants.hpp"
#include "pcw/geometry.hpp"
#include "pcw/heuristic.hpp"
#include "pcw/io.hpp"
#include "pcw/numerics.hpp"
#include "pcw/slab_optics.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNonConvergence = 4;

struct ConventionFlags {
    std::string axial_unit = "period";
    std::string fresnel_wavelength = "vacuum";
    std::string bragg_incidence = "axial_band";
    double damping = 0.5;
    std::optional<double> group_velocity_mps;
};

void add_convention_flags(CLI::App *cmd, ConventionFlags &flags) {
    cmd->add_option("--axial-unit", flags.axial_unit,
                    "Axial falloff unit for the zone count: period|micrometer|nanometer")
        ->capture_default_str();
    cmd->add_option("--fresnel-lambda", flags.fresnel_wavelength,
                    "Wavelength in the zone count: vacuum|in_medium")
        ->capture_default_str();
    cmd->add_option("--bragg-incidence", flags.bragg_incidence,
                    "Sloped-family incidence: axial_band|transverse_band|family_normal")
        ->capture_default_str();
    cmd->add_option("--damping", flags.damping, "Fixed-point damping in (0, 1]")
        ->capture_default_str();
    cmd->add_option("--vg", flags.group_velocity_mps,
                    "Group velocity override in m/s (default c / n(lambda))");
}

pcw::heuristic::HeuristicConfig resolve_config(const ConventionFlags &flags) {
    pcw::heuristic::HeuristicConfig config;
    config.axial_unit = pcw::heuristic::axial_unit_from_string(flags.axial_unit);
    config.fresnel_wavelength =
        pcw::heuristic::fresnel_wavelength_from_string(flags.fresnel_wavelength);
    config.bragg_incidence = pcw::heuristic::bragg_incidence_from_string(flags.bragg_incidence);
    config.damping = flags.damping;
    config.group_velocity_mps = flags.group_velocity_mps;
    return config;
}

pcw::slab_optics::MaterialModel resolve_material(const std::string &material_file) {
    if (material_file.empty()) return pcw::slab_optics::MaterialModel::gaas();
    return pcw::io::material_from_file(material_file);
}

void emit(const std::string &payload, const std::string &out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw pcw::DomainError("cannot open '" + out_path + "' for writing");
    out << payload;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw pcw::DomainError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string sibling_csv_path(const std::string &json_path) {
    const auto dot = json_path.find_last_of('.');
    const auto slash = json_path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return json_path + ".csv";
    return json_path.substr(0, dot) + ".csv";
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Photonic-crystal-waveguide design kit"};
    app.require_subcommand(1);
    // --h is a data flag here, so help lives on --help alone.
    app.set_help_flag("--help", "Print help");

    // fp -------------------------------------------------------------------
    double fp_h = 0.0, fp_n = 0.0, fp_lambda = 0.0;
    std::string fp_out;
    auto *fp = app.add_subcommand("fp", "Vertical slab resonator Purcell factor");
    fp->set_help_flag("--help", "Print help");
    fp->add_option("--h", fp_h, "Membrane thickness in nm")->required();
    fp->add_option("--n", fp_n, "Refractive index")->required();
    fp->add_option("--lambda", fp_lambda, "Vacuum wavelength in nm")->required();
    fp->add_option("--out", fp_out, "Output JSON path (default stdout)");

    // design ---------------------------------------------------------------
    double d_a = 0.0, d_lambda = 0.0, d_h = 0.0, d_theta_deg = 60.0;
    std::optional<double> d_r0;
    std::string d_material, d_out;
    ConventionFlags d_flags;
    auto *design = app.add_subcommand("design", "Solve the hole radius for a target wavelength");
    design->set_help_flag("--help", "Print help");
    design->add_option("--a", d_a, "Lattice period in nm")->required();
    design->add_option("--lambda", d_lambda, "Target wavelength in nm")->required();
    design->add_option("--h", d_h, "Membrane thickness in nm")->required();
    design->add_option("--theta-gr", d_theta_deg, "Lattice angle in degrees")
        ->capture_default_str();
    design->add_option("--material", d_material, "Material table file (default GaAs)");
    design->add_option("--r0", d_r0, "Initial radius guess in nm (default a/3)");
    design->add_option("--out", d_out, "Output JSON path (default stdout)");
    add_convention_flags(design, d_flags);

    // curve ------------------------------------------------------------------
    double c_lambda = 0.0, c_h = 0.0, c_theta_deg = 60.0;
    double c_a_min = 0.0, c_a_max = 0.0, c_a_step = 0.0;
    std::string c_material, c_out;
    ConventionFlags c_flags;
    auto *curve = app.add_subcommand("curve", "Design locus over a period grid, CSV output");
    curve->set_help_flag("--help", "Print help");
    curve->add_option("--lambda", c_lambda, "Target wavelength in nm")->required();
    curve->add_option("--h", c_h, "Membrane thickness in nm")->required();
    curve->add_option("--a-min", c_a_min, "First period in nm")->required();
    curve->add_option("--a-max", c_a_max, "Last period in nm")->required();
    curve->add_option("--a-step", c_a_step, "Period step in nm")->required();
    curve->add_option("--theta-gr", c_theta_deg, "Lattice angle in degrees")
        ->capture_default_str();
    curve->add_option("--material", c_material, "Material table file (default GaAs)");
    curve->add_option("--out", c_out, "Output CSV path")->required();
    add_convention_flags(curve, c_flags);

    // compound ---------------------------------------------------------------
    double k_a1 = 0.0, k_a2 = 0.0, k_l1 = 0.0, k_l2 = 0.0, k_h = 0.0, k_theta_deg = 60.0;
    std::string k_material, k_out;
    ConventionFlags k_flags;
    auto *comp = app.add_subcommand("compound", "Compose two half-lattice designs");
    comp->set_help_flag("--help", "Print help");
    comp->add_option("--a1", k_a1, "Half 1 period in nm")->required();
    comp->add_option("--a2", k_a2, "Half 2 period in nm")->required();
    comp->add_option("--lambda1", k_l1, "Half 1 target wavelength in nm")->required();
    comp->add_option("--lambda2", k_l2, "Half 2 target wavelength in nm")->required();
    comp->add_option("--h", k_h, "Membrane thickness in nm")->required();
    comp->add_option("--theta-gr", k_theta_deg, "Lattice angle in degrees")
        ->capture_default_str();
    comp->add_option("--material", k_material, "Material table file (default GaAs)");
    comp->add_option("--out", k_out, "Output JSON path (default stdout)");
    add_convention_flags(comp, k_flags);

    // perturb ------------------------------------------------------------------
    std::string p_config, p_out;
    std::optional<std::uint64_t> p_seed;
    std::optional<double> p_delta, p_window, p_bias_a, p_bias_r;
    std::optional<int> p_runs, p_holes;
    std::optional<std::string> p_mode;
    ConventionFlags p_flags;
    auto *perturb =
        app.add_subcommand("perturb", "Seeded Monte Carlo over random hole-radius offsets");
    perturb->set_help_flag("--help", "Print help");
    perturb->add_option("--config", p_config, "JSON config file (see README for the schema)");
    perturb->add_option("--seed", p_seed, "RNG seed (overrides the config file)");
    perturb->add_option("--out", p_out, "Output report path; writes JSON plus a CSV sibling")
        ->required();
    perturb->add_option("--delta-r-max", p_delta, "Max |radius offset| in nm");
    perturb->add_option("--n-runs", p_runs, "Number of Monte Carlo runs");
    perturb->add_option("--holes-per-half", p_holes, "Holes averaged per half");
    perturb->add_option("--mode", p_mode, "per-hole-mean|per-half-single");
    perturb->add_option("--success-window", p_window, "Success window half-width in nm");
    perturb->add_option("--bias-a", p_bias_a, "Systematic period offset in nm");
    perturb->add_option("--bias-r", p_bias_r, "Systematic radius offset in nm");
    add_convention_flags(perturb, p_flags);

    // export-geometry ---------------------------------------------------------
    std::string g_design, g_out;
    int g_rows = 0, g_cols = 0;
    auto *geom = app.add_subcommand("export-geometry",
                                    "Hole list for external solvers from a design JSON");
    geom->set_help_flag("--help", "Print help");
    geom->add_option("--design", g_design, "design/compound JSON file")->required();
    geom->add_option("--rows", g_rows, "Lattice rows including the removed centre row")
        ->required();
    geom->add_option("--cols", g_cols, "Holes per row")->required();
    geom->add_option("--out", g_out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*fp) {
            const auto vc = pcw::slab_optics::vertical_cavity(fp_h, fp_n, fp_lambda);
            emit(pcw::io::vertical_cavity_json(vc, fp_n, fp_lambda), fp_out);
        } else if (*design) {
            const auto config = resolve_config(d_flags);
            const pcw::heuristic::DesignProblem problem{
                d_a, d_lambda, d_h, resolve_material(d_material),
                pcw::constants::degrees_to_radians(d_theta_deg)};
            const auto result = pcw::heuristic::design_radius(problem, d_r0, {}, config);
            emit(pcw::io::design_json(result, problem, d_r0), d_out);
        } else if (*curve) {
            if (!(c_a_step > 0.0)) throw pcw::DomainError("curve: --a-step must be positive");
            if (!(c_a_max >= c_a_min))
                throw pcw::DomainError("curve: --a-max must be >= --a-min");
            std::vector<double> grid;
            for (int i = 0;; ++i) {
                const double a = c_a_min + i * c_a_step;
                if (a > c_a_max + 1e-9 * c_a_step) break;
                grid.push_back(a);
            }
            const auto config = resolve_config(c_flags);
            const pcw::heuristic::DesignProblem problem{
                0.0, c_lambda, c_h, resolve_material(c_material),
                pcw::constants::degrees_to_radians(c_theta_deg)};
            const auto points = pcw::heuristic::design_curve(problem, grid, {}, config);
            std::ostringstream csv;
            pcw::io::write_curve_csv(csv, points);
            emit(csv.str(), c_out);
        } else if (*comp) {
            const auto config = resolve_config(k_flags);
            const auto design_out = pcw::compound::build_compound(
                k_a1, k_a2, k_l1, k_l2, k_h, resolve_material(k_material),
                pcw::constants::degrees_to_radians(k_theta_deg), {}, config);
            emit(pcw::io::compound_json(design_out), k_out);
        } else if (*perturb) {
            pcw::io::PerturbSetup setup;
            if (!p_config.empty()) setup = pcw::io::parse_perturb_config(read_file(p_config));
            if (p_seed) setup.perturbation.seed = *p_seed;
            if (p_delta) setup.perturbation.delta_r_max_nm = *p_delta;
            if (p_runs) setup.perturbation.n_runs = *p_runs;
            if (p_holes) setup.perturbation.holes_per_half = *p_holes;
            if (p_window) setup.perturbation.success_window_nm = *p_window;
            if (p_bias_a) setup.perturbation.bias_a_nm = *p_bias_a;
            if (p_bias_r) setup.perturbation.bias_r_nm = *p_bias_r;
            if (p_mode)
                setup.perturbation.mode = pcw::compound::perturbation_mode_from_string(*p_mode);

            const auto config = resolve_config(p_flags);
            const auto material = setup.material_file
                                      ? pcw::io::material_from_file(*setup.material_file)
                                      : pcw::slab_optics::MaterialModel::gaas();
            const auto design_out = pcw::compound::build_compound(
                setup.a_1_nm, setup.a_2_nm, setup.lambda_1_nm, setup.lambda_2_nm, setup.h_nm,
                material, pcw::constants::degrees_to_radians(setup.theta_gr_deg), {}, config);
            const auto report =
                pcw::compound::run_perturbation(design_out, setup.perturbation, {}, config);
            emit(pcw::io::perturbation_json(report, design_out, config), p_out);
            std::ostringstream csv;
            pcw::io::write_perturbation_csv(csv, report);
            emit(csv.str(), sibling_csv_path(p_out));
        } else if (*geom) {
            const auto input = pcw::io::parse_geometry_input(read_file(g_design));
            pcw::geometry::GeometryExport geo;
            if (input.compound) {
                pcw::compound::CompoundDesign cd;
                cd.half_1.spec = input.half_1;
                cd.half_2.spec = input.half_2;
                geo = pcw::geometry::build_compound_lattice(cd, g_rows, g_cols);
            } else {
                geo = pcw::geometry::build_lattice(input.half_1, g_rows, g_cols);
            }
            std::ostringstream text;
            pcw::geometry::write_geometry(text, geo);
            emit(text.str(), g_out);
        }
    } catch (const pcw::numerics::NonConvergenceError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const pcw::ConvergenceError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const pcw::InfeasibleError &e) {
        std::cerr << "error (infeasible " << e.quantity() << "): " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pcw::DomainError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const pcw::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
