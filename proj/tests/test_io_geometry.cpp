#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pcw/compound.hpp"
#include "pcw/constants.hpp"
#include "pcw/geometry.hpp"
#include "pcw/io.hpp"

using namespace pcw;
using nlohmann::json;
using pcw::constants::pi;

namespace {

const double kTheta60 = pi / 3.0;

heuristic::DesignProblem reference_problem(double a = 238.0) {
    return {a, 925.0, 160.0, slab_optics::MaterialModel::gaas(), kTheta60};
}

} // namespace

TEST_CASE("unit conversions round-trip at the boundary") {
    for (const double deg : {0.0, 30.0, 60.0, 90.0, 123.456}) {
        CHECK(constants::radians_to_degrees(constants::degrees_to_radians(deg)) ==
              doctest::Approx(deg).epsilon(1e-14));
    }
    for (const double nm : {1.0, 238.0, 925.0}) {
        CHECK(nm * constants::nm_to_um * constants::um_to_nm ==
              doctest::Approx(nm).epsilon(1e-14));
    }
}

TEST_CASE("design JSON: schema, config echo and trace") {
    const auto problem = reference_problem();
    const auto result = heuristic::design_radius(problem);
    const auto doc = json::parse(io::design_json(result, problem, std::nullopt));

    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("kind") == "design");
    CHECK(doc.at("config").at("axial_unit") == "period");
    CHECK(doc.at("config").at("fresnel_wavelength") == "vacuum");
    CHECK(doc.at("config").at("bragg_incidence") == "axial_band");
    CHECK(doc.at("config").at("group_velocity_mps").is_null());
    CHECK(doc.at("input").at("theta_gr_deg") == doctest::Approx(60.0));
    CHECK(doc.at("result").at("trace").at("steps").size() >= 1);
    CHECK(doc.at("result").at("spec").at("r_nm") ==
          doctest::Approx(result.spec.r_nm).epsilon(1e-14));
    CHECK(doc.at("result").contains("warnings"));
}

TEST_CASE("geometry input parses back from design and compound JSON") {
    const auto problem = reference_problem();
    const auto result = heuristic::design_radius(problem);
    const auto gi = io::parse_geometry_input(io::design_json(result, problem, std::nullopt));
    CHECK(!gi.compound);
    CHECK(gi.half_1.a_nm == doctest::Approx(238.0));
    CHECK(gi.half_1.r_nm == doctest::Approx(result.spec.r_nm).epsilon(1e-12));
    CHECK(gi.half_1.theta_gr_rad == doctest::Approx(kTheta60).epsilon(1e-12));
    CHECK(gi.half_1.material.name() == "GaAs");

    const auto cd = compound::build_compound(233.0, 238.0, 925.0, 925.0, 160.0,
                                             slab_optics::MaterialModel::gaas(), kTheta60);
    const auto gi2 = io::parse_geometry_input(io::compound_json(cd));
    CHECK(gi2.compound);
    CHECK(gi2.half_1.a_nm == doctest::Approx(233.0));
    CHECK(gi2.half_2.a_nm == doctest::Approx(238.0));

    CHECK_THROWS_AS(io::parse_geometry_input("{not json"), DomainError);
    CHECK_THROWS_AS(io::parse_geometry_input(R"({"kind":"mystery"})"), DomainError);
}

TEST_CASE("perturbation JSON: RNG identity, scope statement, run table") {
    const auto cd = compound::build_compound(238.0, 238.0, 925.0, 925.0, 160.0,
                                             slab_optics::MaterialModel::gaas(), kTheta60);
    compound::PerturbationConfig cfg;
    cfg.n_runs = 5;
    cfg.seed = 17;
    cfg.holes_per_half = 8;
    const auto report = compound::run_perturbation(cd, cfg);
    const auto doc = json::parse(io::perturbation_json(report, cd, {}));

    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("config").at("rng") == "splitmix64/v1");
    CHECK(doc.at("config").at("seed") == 17);
    CHECK(doc.at("config").at("delta_r_max_nm") == doctest::Approx(10.0));
    CHECK(doc.at("config").at("mode") == "per-hole-mean");
    CHECK(doc.at("config").at("model").at("axial_unit") == "period");
    CHECK(doc.at("result").at("runs").size() == 5);
    const auto scope = doc.at("surrogate_scope").get<std::string>();
    CHECK(scope.find("success_window") != std::string::npos);
    CHECK(scope.find("out of scope") != std::string::npos);
}

TEST_CASE("curve CSV: pinned columns, empty cells on infeasible rows") {
    heuristic::DesignProblem p = reference_problem();
    p.a_nm = 0.0;
    const auto curve = heuristic::design_curve(p, {50.0, 238.0});
    std::ostringstream out;
    io::write_curve_csv(out, curve);
    std::istringstream lines(out.str());
    std::string header, row_bad, row_good;
    std::getline(lines, header);
    std::getline(lines, row_bad);
    std::getline(lines, row_good);
    CHECK(header == "# a_nm,r_nm,c1_nm,c2,theta_wg_rad,F_PCW,beta,feasible");
    CHECK(row_bad == "50,,,,,,,0");
    CHECK(row_good.substr(0, 4) == "238,");
    CHECK(row_good.back() == '1');
    CHECK(std::count(row_good.begin(), row_good.end(), ',') == 7);
}

TEST_CASE("perturbation CSV: pinned columns and determinism") {
    const auto cd = compound::build_compound(233.0, 238.0, 920.0, 930.0, 160.0,
                                             slab_optics::MaterialModel::gaas(), kTheta60);
    compound::PerturbationConfig cfg;
    cfg.n_runs = 4;
    cfg.seed = 99;
    cfg.holes_per_half = 6;
    const auto report = compound::run_perturbation(cd, cfg);

    std::ostringstream a, b;
    io::write_perturbation_csv(a, report);
    io::write_perturbation_csv(b, compound::run_perturbation(cd, cfg));
    CHECK(a.str() == b.str());

    std::istringstream lines(a.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "run,eff_r1_nm,eff_r2_nm,peak1_nm,peak2_nm,compound_peak_nm");
    int rows = 0;
    for (std::string line; std::getline(lines, line);) ++rows;
    CHECK(rows == 4);
}

TEST_CASE("perturb config file: parse, override and unknown keys") {
    const std::string text = R"({
      "compound": {"a1_nm": 233.0, "a2_nm": 238.0, "lambda1_nm": 920.0,
                    "lambda2_nm": 930.0, "h_nm": 160.0, "theta_gr_deg": 60.0},
      "perturbation": {"delta_r_max_nm": 5.0, "n_runs": 7, "mode": "per-half-single",
                        "seed": 4}
    })";
    const auto setup = io::parse_perturb_config(text);
    CHECK(setup.a_1_nm == doctest::Approx(233.0));
    CHECK(setup.lambda_2_nm == doctest::Approx(930.0));
    CHECK(setup.perturbation.delta_r_max_nm == doctest::Approx(5.0));
    CHECK(setup.perturbation.n_runs == 7);
    CHECK(setup.perturbation.mode == compound::PerturbationMode::per_half_single);
    CHECK(setup.perturbation.seed == 4);
    CHECK(setup.perturbation.holes_per_half == 100); // default kept

    CHECK_THROWS_AS(io::parse_perturb_config(R"({"typo": 1})"), DomainError);
    CHECK_THROWS_AS(io::parse_perturb_config(R"({"perturbation": {"delta_r": 1}})"),
                    DomainError);
    CHECK_THROWS_AS(io::parse_perturb_config("nope"), DomainError);
}

TEST_CASE("geometry: hole count and removed row") {
    const auto d = heuristic::design_radius(reference_problem());
    const auto geo = geometry::build_lattice(d.spec, 3, 4);
    CHECK(geo.holes.size() == 3 * 4 - 4);
    for (const auto &h : geo.holes) CHECK(h.y_nm != 0.0);

    const auto big = geometry::build_lattice(d.spec, 7, 5);
    CHECK(big.holes.size() == 7 * 5 - 5);

    CHECK_THROWS_AS(geometry::build_lattice(d.spec, 4, 4), DomainError);
    CHECK_THROWS_AS(geometry::build_lattice(d.spec, 1, 4), DomainError);
    CHECK_THROWS_AS(geometry::build_lattice(d.spec, 3, 0), DomainError);
}

TEST_CASE("geometry: holes never overlap") {
    const auto d = heuristic::design_radius(reference_problem());
    const auto geo = geometry::build_lattice(d.spec, 5, 6);
    for (std::size_t i = 0; i < geo.holes.size(); ++i) {
        for (std::size_t j = i + 1; j < geo.holes.size(); ++j) {
            const double dx = geo.holes[i].x_nm - geo.holes[j].x_nm;
            const double dy = geo.holes[i].y_nm - geo.holes[j].y_nm;
            const double dist = std::hypot(dx, dy);
            CHECK(dist >= geo.holes[i].r_nm + geo.holes[j].r_nm - 1e-9);
        }
    }
}

TEST_CASE("geometry: compound layout switches radius and period at x = 0") {
    const auto cd = compound::build_compound(233.0, 238.0, 925.0, 925.0, 160.0,
                                             slab_optics::MaterialModel::gaas(), kTheta60);
    const auto geo = geometry::build_compound_lattice(cd, 5, 6);
    CHECK(geo.holes.size() == 5 * 6 - 6);

    std::set<double> radii;
    for (const auto &h : geo.holes) {
        radii.insert(h.r_nm);
        if (h.x_nm < 0.0) CHECK(h.r_nm == doctest::Approx(cd.half_1.spec.r_nm));
        if (h.x_nm > 0.0) CHECK(h.r_nm == doctest::Approx(cd.half_2.spec.r_nm));
    }
    CHECK(radii.size() == 2);

    // Non-overlap across the seam included.
    for (std::size_t i = 0; i < geo.holes.size(); ++i) {
        for (std::size_t j = i + 1; j < geo.holes.size(); ++j) {
            const double dist = std::hypot(geo.holes[i].x_nm - geo.holes[j].x_nm,
                                           geo.holes[i].y_nm - geo.holes[j].y_nm);
            CHECK(dist >= geo.holes[i].r_nm + geo.holes[j].r_nm - 1e-9);
        }
    }

    CHECK_THROWS_AS(geometry::build_compound_lattice(cd, 5, 5), DomainError);
}

TEST_CASE("geometry: exact text format") {
    heuristic::LatticeSpec spec{kTheta60, 238.0, 80.0, 160.0,
                                slab_optics::MaterialModel::gaas()};
    const auto geo = geometry::build_lattice(spec, 3, 2);
    std::ostringstream out;
    geometry::write_geometry(out, geo);
    std::istringstream lines(out.str());
    std::string l1, l2, l3;
    std::getline(lines, l1);
    std::getline(lines, l2);
    std::getline(lines, l3);
    CHECK(l1 == "# h_nm=160");
    CHECK(l2 == "# lattice=triangular theta_gr_deg=60");
    // 6 significant digits, space-separated x y r.
    double x = 0.0, y = 0.0, r = 0.0;
    std::istringstream(l3) >> x >> y >> r;
    CHECK(r == doctest::Approx(80.0));
    CHECK(std::abs(y) == doctest::Approx(206.114).epsilon(1e-6));

    std::ostringstream again;
    geometry::write_geometry(again, geo);
    CHECK(out.str() == again.str());
    CHECK(out.str().find("\r") == std::string::npos);
}
