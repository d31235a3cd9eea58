#include "pcw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pcw/constants.hpp"

namespace pcw::io {

using nlohmann::json;

namespace {

// Shortest round-trip representation; locale-independent.
std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    char buf[48];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

json material_to_json(const slab_optics::MaterialModel &m) {
    json samples = json::array();
    for (const auto &s : m.samples()) samples.push_back({s.lambda_nm, s.n});
    return {{"name", m.name()}, {"fallback_n", m.fallback_n()}, {"samples", samples}};
}

slab_optics::MaterialModel material_from_json(const json &j) {
    std::vector<slab_optics::MaterialModel::Sample> samples;
    for (const auto &row : j.at("samples"))
        samples.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    return slab_optics::MaterialModel(j.at("name").get<std::string>(), std::move(samples),
                                      j.at("fallback_n").get<double>());
}

json config_to_json(const heuristic::HeuristicConfig &c) {
    json j{{"axial_unit", heuristic::to_string(c.axial_unit)},
           {"fresnel_wavelength", heuristic::to_string(c.fresnel_wavelength)},
           {"bragg_incidence", heuristic::to_string(c.bragg_incidence)},
           {"damping", c.damping}};
    if (c.group_velocity_mps)
        j["group_velocity_mps"] = *c.group_velocity_mps;
    else
        j["group_velocity_mps"] = nullptr; // c / n(lambda)
    return j;
}

json spec_to_json(const heuristic::LatticeSpec &spec) {
    return {{"theta_gr_deg", constants::radians_to_degrees(spec.theta_gr_rad)},
            {"a_nm", spec.a_nm},
            {"r_nm", spec.r_nm},
            {"h_nm", spec.h_nm},
            {"material", material_to_json(spec.material)}};
}

heuristic::LatticeSpec spec_from_json(const json &j) {
    heuristic::LatticeSpec spec;
    spec.theta_gr_rad = constants::degrees_to_radians(j.at("theta_gr_deg").get<double>());
    spec.a_nm = j.at("a_nm").get<double>();
    spec.r_nm = j.at("r_nm").get<double>();
    spec.h_nm = j.at("h_nm").get<double>();
    spec.material = material_from_json(j.at("material"));
    return spec;
}

json trace_to_json(const numerics::ConvergenceTrace &trace) {
    json steps = json::array();
    for (const auto &s : trace.steps)
        steps.push_back({{"iteration", s.iteration}, {"value", s.value}, {"residual", s.residual}});
    return {{"converged", trace.converged}, {"steps", steps}};
}

json design_result_to_json(const heuristic::DesignResult &r) {
    return {{"spec", spec_to_json(r.spec)},
            {"theta_wg_rad", r.theta_wg_rad},
            {"c1_nm", r.c1_nm},
            {"c2", r.c2},
            {"f_pcw", r.f_pcw},
            {"f_fp", r.f_fp},
            {"beta", r.beta},
            {"a_slp_nm", r.a_slp_nm},
            {"a_par_nm", r.a_par_nm},
            {"mode_volume",
             {{"mean_x", r.mode_volume.mean_x},
              {"mean_x_nm", r.mode_volume.mean_x_nm},
              {"fresnel_zones_m", r.mode_volume.fresnel_zones_m},
              {"cornu_u", r.mode_volume.cornu_u},
              {"intensity_ratio", r.mode_volume.intensity_ratio},
              {"intensity_ratio_raw", r.mode_volume.intensity_ratio_raw},
              {"cell_volume_nm3", r.mode_volume.cell_volume_nm3},
              {"v_eff_nm3", r.mode_volume.v_eff_nm3}}},
            {"trace", trace_to_json(r.trace)},
            {"warnings", r.warnings}};
}

} // namespace

slab_optics::MaterialModel material_from_file(const std::string &path, double fallback_n) {
    std::ifstream in(path);
    if (!in) throw DomainError("material table: cannot open '" + path + "'");

    std::vector<slab_optics::MaterialModel::Sample> samples;
    std::string line;
    int line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        double lambda = 0.0, n = 0.0;
        if (!(row >> lambda)) {
            std::string word;
            std::istringstream probe(line);
            if (probe >> word && header_allowed) {
                header_allowed = false; // one non-numeric header line
                continue;
            }
            continue; // blank
        }
        header_allowed = false;
        if (!(row >> n)) {
            std::ostringstream msg;
            msg << "material table '" << path << "': line " << line_no
                << " needs two columns (wavelength_nm, n)";
            throw DomainError(msg.str());
        }
        samples.push_back({lambda, n});
    }

    std::string name = path;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    return slab_optics::MaterialModel(name, std::move(samples), fallback_n);
}

std::string vertical_cavity_json(const slab_optics::VerticalCavity &vc, double n,
                                 double lambda_nm) {
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "vertical_cavity"},
             {"input", {{"h_nm", vc.h_nm}, {"n", n}, {"lambda_nm", lambda_nm}}},
             {"result",
              {{"reflectance", vc.reflectance},
               {"omega_1_rad_s", vc.omega_1_rad_s},
               {"d_omega_rad_s", vc.d_omega_rad_s},
               {"quality", vc.quality},
               {"v_eff_nm3", vc.v_eff_nm3},
               {"lorentzian", vc.lorentzian},
               {"f_fp", vc.f_fp}}}};
    return doc.dump(2) + "\n";
}

std::string design_json(const heuristic::DesignResult &result,
                        const heuristic::DesignProblem &problem,
                        std::optional<double> r0_nm) {
    json input{{"a_nm", problem.a_nm},
               {"lambda_nm", problem.lambda_nm},
               {"h_nm", problem.h_nm},
               {"theta_gr_deg", constants::radians_to_degrees(problem.theta_gr_rad)},
               {"material", material_to_json(problem.material)}};
    if (r0_nm)
        input["r0_nm"] = *r0_nm;
    else
        input["r0_nm"] = nullptr; // a/3 default
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "design"},
             {"config", config_to_json(result.config)},
             {"input", input},
             {"result", design_result_to_json(result)}};
    return doc.dump(2) + "\n";
}

std::string compound_json(const compound::CompoundDesign &design) {
    json doc{{"schema_version", kSchemaVersion},
             {"kind", "compound"},
             {"config", config_to_json(design.half_1.config)},
             {"input",
              {{"a1_nm", design.half_1.spec.a_nm},
               {"a2_nm", design.half_2.spec.a_nm},
               {"lambda1_nm", design.target_lambda_1_nm},
               {"lambda2_nm", design.target_lambda_2_nm},
               {"h_nm", design.half_1.spec.h_nm},
               {"theta_gr_deg",
                constants::radians_to_degrees(design.half_1.spec.theta_gr_rad)},
               {"material", material_to_json(design.half_1.spec.material)}}},
             {"result",
              {{"predicted_peak_nm", design.predicted_peak_nm},
               {"half_1", design_result_to_json(design.half_1)},
               {"half_2", design_result_to_json(design.half_2)}}}};
    return doc.dump(2) + "\n";
}

std::string perturbation_json(const compound::PerturbationReport &report,
                              const compound::CompoundDesign &design,
                              const heuristic::HeuristicConfig &config) {
    json runs = json::array();
    for (const auto &run : report.runs) {
        json j{{"run", run.run},
               {"eff_r1_nm", run.eff_r1_nm},
               {"eff_r2_nm", run.eff_r2_nm},
               {"ok", run.ok}};
        j["peak1_nm"] = run.ok ? json(run.peak1_nm) : json(nullptr);
        j["peak2_nm"] = run.ok ? json(run.peak2_nm) : json(nullptr);
        j["compound_peak_nm"] = run.ok ? json(run.compound_peak_nm) : json(nullptr);
        if (!run.ok) j["error"] = run.error;
        runs.push_back(std::move(j));
    }

    json doc{
        {"schema_version", kSchemaVersion},
        {"kind", "perturbation_report"},
        {"config",
         {{"delta_r_max_nm", report.config.delta_r_max_nm},
          {"n_runs", report.config.n_runs},
          {"holes_per_half", report.config.holes_per_half},
          {"mode", compound::to_string(report.config.mode)},
          {"success_window_nm", report.config.success_window_nm},
          {"bias_a_nm", report.config.bias_a_nm},
          {"bias_r_nm", report.config.bias_r_nm},
          {"seed", report.seed},
          {"rng", report.rng_id},
          {"model", config_to_json(config)}}},
        {"design",
         {{"predicted_peak_nm", design.predicted_peak_nm},
          {"target_lambda_1_nm", design.target_lambda_1_nm},
          {"target_lambda_2_nm", design.target_lambda_2_nm},
          {"half_1_spec", spec_to_json(design.half_1.spec)},
          {"half_2_spec", spec_to_json(design.half_2.spec)}}},
        {"surrogate_scope",
         "Peaks come from the closed-form design model, not field simulation; absolute "
         "Purcell spectra, linewidths and peak enhancement values are out of scope. "
         "success_fraction counts runs whose composed peak lies within success_window_nm "
         "of the target."},
        {"result",
         {{"mean_shift_nm", std::isfinite(report.mean_shift_nm) ? json(report.mean_shift_nm)
                                                                : json(nullptr)},
          {"std_shift_nm",
           std::isfinite(report.std_shift_nm) ? json(report.std_shift_nm) : json(nullptr)},
          {"success_fraction", report.success_fraction},
          {"n_failed", report.n_failed},
          {"runs", runs}}}};
    return doc.dump(2) + "\n";
}

void write_curve_csv(std::ostream &out, const std::vector<heuristic::CurvePoint> &curve) {
    out << "# a_nm,r_nm,c1_nm,c2,theta_wg_rad,F_PCW,beta,feasible\n";
    for (const auto &pt : curve) {
        if (pt.feasible()) {
            const auto &r = *pt.result;
            out << fmt(pt.a_nm) << "," << fmt(r.spec.r_nm) << "," << fmt(r.c1_nm) << ","
                << fmt(r.c2) << "," << fmt(r.theta_wg_rad) << "," << fmt(r.f_pcw) << ","
                << fmt(r.beta) << ",1\n";
        } else {
            out << fmt(pt.a_nm) << ",,,,,,,0\n";
        }
    }
}

void write_perturbation_csv(std::ostream &out, const compound::PerturbationReport &report) {
    out << "run,eff_r1_nm,eff_r2_nm,peak1_nm,peak2_nm,compound_peak_nm\n";
    for (const auto &run : report.runs) {
        out << run.run << "," << fmt(run.eff_r1_nm) << "," << fmt(run.eff_r2_nm) << ","
            << fmt(run.peak1_nm) << "," << fmt(run.peak2_nm) << ","
            << fmt(run.compound_peak_nm) << "\n";
    }
}

GeometryInput parse_geometry_input(const std::string &json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception &e) {
        throw DomainError(std::string("geometry input: invalid JSON: ") + e.what());
    }
    try {
        GeometryInput gi;
        const std::string kind = doc.at("kind").get<std::string>();
        if (kind == "design") {
            gi.compound = false;
            gi.half_1 = spec_from_json(doc.at("result").at("spec"));
        } else if (kind == "compound") {
            gi.compound = true;
            gi.half_1 = spec_from_json(doc.at("result").at("half_1").at("spec"));
            gi.half_2 = spec_from_json(doc.at("result").at("half_2").at("spec"));
        } else {
            throw DomainError("geometry input: kind must be 'design' or 'compound', got '" +
                              kind + "'");
        }
        return gi;
    } catch (const json::exception &e) {
        throw DomainError(std::string("geometry input: missing field: ") + e.what());
    }
}

PerturbSetup parse_perturb_config(const std::string &json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception &e) {
        throw DomainError(std::string("perturb config: invalid JSON: ") + e.what());
    }

    const auto reject_unknown = [](const json &obj, std::initializer_list<const char *> known,
                                   const char *where) {
        for (const auto &[key, value] : obj.items()) {
            (void)value;
            bool ok = false;
            for (const char *k : known)
                if (key == k) ok = true;
            if (!ok)
                throw DomainError(std::string("perturb config: unknown key '") + key + "' in " +
                                  where);
        }
    };

    PerturbSetup setup;
    try {
        reject_unknown(doc, {"compound", "perturbation"}, "document root");
        if (doc.contains("compound")) {
            const auto &c = doc.at("compound");
            reject_unknown(c,
                           {"a1_nm", "a2_nm", "lambda1_nm", "lambda2_nm", "h_nm", "theta_gr_deg",
                            "material_file"},
                           "'compound'");
            setup.a_1_nm = c.value("a1_nm", setup.a_1_nm);
            setup.a_2_nm = c.value("a2_nm", setup.a_2_nm);
            setup.lambda_1_nm = c.value("lambda1_nm", setup.lambda_1_nm);
            setup.lambda_2_nm = c.value("lambda2_nm", setup.lambda_2_nm);
            setup.h_nm = c.value("h_nm", setup.h_nm);
            setup.theta_gr_deg = c.value("theta_gr_deg", setup.theta_gr_deg);
            if (c.contains("material_file"))
                setup.material_file = c.at("material_file").get<std::string>();
        }
        if (doc.contains("perturbation")) {
            const auto &p = doc.at("perturbation");
            reject_unknown(p,
                           {"delta_r_max_nm", "n_runs", "holes_per_half", "success_window_nm",
                            "bias_a_nm", "bias_r_nm", "seed", "mode"},
                           "'perturbation'");
            auto &cfg = setup.perturbation;
            cfg.delta_r_max_nm = p.value("delta_r_max_nm", cfg.delta_r_max_nm);
            cfg.n_runs = p.value("n_runs", cfg.n_runs);
            cfg.holes_per_half = p.value("holes_per_half", cfg.holes_per_half);
            cfg.success_window_nm = p.value("success_window_nm", cfg.success_window_nm);
            cfg.bias_a_nm = p.value("bias_a_nm", cfg.bias_a_nm);
            cfg.bias_r_nm = p.value("bias_r_nm", cfg.bias_r_nm);
            cfg.seed = p.value("seed", cfg.seed);
            if (p.contains("mode"))
                cfg.mode = compound::perturbation_mode_from_string(p.at("mode").get<std::string>());
        }
    } catch (const json::exception &e) {
        throw DomainError(std::string("perturb config: ") + e.what());
    }
    return setup;
}

} // namespace pcw::io
