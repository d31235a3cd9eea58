#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "pcw/constants.hpp"
#include "pcw/io.hpp"
#include "pcw/slab_optics.hpp"

using namespace pcw;

TEST_CASE("MaterialModel: table lookup rules") {
    const auto gaas = slab_optics::MaterialModel::gaas();
    CHECK(gaas.index_at(925.0) == 3.46);
    // Single-sample tables behave as a constant index.
    CHECK(gaas.index_at(905.0) == 3.46);
    CHECK(gaas.index_at(1100.0) == 3.46);

    const slab_optics::MaterialModel empty("flat", {}, 2.0);
    CHECK(empty.index_at(500.0) == 2.0);

    const slab_optics::MaterialModel table("two", {{900.0, 3.40}, {1000.0, 3.50}}, 3.45);
    CHECK(table.index_at(900.0) == doctest::Approx(3.40));
    CHECK(table.index_at(950.0) == doctest::Approx(3.45));
    CHECK(table.index_at(1000.0) == doctest::Approx(3.50));
    CHECK_THROWS_AS(table.index_at(899.0), DomainError);
    CHECK_THROWS_AS(table.index_at(1001.0), DomainError);
}

TEST_CASE("MaterialModel: construction invariants") {
    CHECK_THROWS_AS(slab_optics::MaterialModel("bad", {{900.0, 0.9}}, 3.46), DomainError);
    CHECK_THROWS_AS(slab_optics::MaterialModel("bad", {{900.0, 3.4}, {900.0, 3.5}}, 3.46),
                    DomainError);
    CHECK_THROWS_AS(slab_optics::MaterialModel("bad", {{900.0, 3.4}, {850.0, 3.5}}, 3.46),
                    DomainError);
    CHECK_THROWS_AS(slab_optics::MaterialModel("bad", {}, 1.0), DomainError);
    const auto gaas = slab_optics::MaterialModel::gaas();
    CHECK_THROWS_AS(gaas.index_at(0.0), DomainError);
}

TEST_CASE("material_from_file: header and comments") {
    const std::string path = "pcw_test_material.txt";
    {
        std::ofstream out(path);
        out << "wavelength_nm n  # header line\n";
        out << "# GaAs-ish table\n";
        out << "900 3.40\n";
        out << "\n";
        out << "950 3.45 # inline comment\n";
        out << "1000 3.50\n";
    }
    const auto m = io::material_from_file(path, 3.46);
    CHECK(m.samples().size() == 3);
    CHECK(m.index_at(925.0) == doctest::Approx(3.425));
    std::remove(path.c_str());
}

TEST_CASE("material_from_file: malformed rows rejected") {
    const std::string path = "pcw_test_material_bad.txt";
    {
        std::ofstream out(path);
        out << "900 3.40\n";
        out << "950\n";
    }
    CHECK_THROWS_AS(io::material_from_file(path, 3.46), DomainError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(io::material_from_file("no_such_file.txt", 3.46), DomainError);
}

TEST_CASE("vertical_cavity: reference membrane") {
    const auto vc = slab_optics::vertical_cavity(160.0, 3.46, 925.0);

    CHECK(vc.f_fp > 0.56);
    CHECK(vc.f_fp < 0.72);
    CHECK(vc.f_fp == doctest::Approx(0.6747520008).epsilon(1e-9));

    // Normal-incidence reflectance by direct arithmetic.
    const double r_direct = (2.46 / 4.46) * (2.46 / 4.46);
    CHECK(vc.reflectance == doctest::Approx(r_direct).epsilon(1e-14));

    CHECK(vc.v_eff_nm3 == doctest::Approx((2.0 / 3.0) * 160.0 * 160.0 * 160.0).epsilon(1e-14));
    CHECK(vc.quality == doctest::Approx(vc.omega_1_rad_s / vc.d_omega_rad_s).epsilon(1e-14));
}

TEST_CASE("vertical_cavity: Lorentzian peaks at the half-wave resonance") {
    const double n = 3.46;
    const double h = 160.0;
    const double lambda_res = 2.0 * n * h; // omega == omega_1
    const auto at_res = slab_optics::vertical_cavity(h, n, lambda_res);
    CHECK(at_res.lorentzian == doctest::Approx(1.0).epsilon(1e-12));

    for (const double lambda : {700.0, 850.0, 925.0, 1000.0, 1200.0, 1500.0}) {
        const auto vc = slab_optics::vertical_cavity(h, n, lambda);
        CHECK(vc.lorentzian > 0.0);
        CHECK(vc.lorentzian <= 1.0);
        CHECK(vc.f_fp >= 0.0);
    }
}

TEST_CASE("vertical_cavity: dimensionless outputs are unit-scale consistent") {
    const auto nm = slab_optics::vertical_cavity(160.0, 3.46, 925.0);
    const auto um = slab_optics::vertical_cavity(0.160, 3.46, 0.925);
    CHECK(nm.reflectance == doctest::Approx(um.reflectance).epsilon(1e-13));
    CHECK(nm.quality == doctest::Approx(um.quality).epsilon(1e-13));
    CHECK(nm.f_fp == doctest::Approx(um.f_fp).epsilon(1e-12));
}

TEST_CASE("vertical_cavity: argument validation") {
    CHECK_THROWS_AS(slab_optics::vertical_cavity(0.0, 3.46, 925.0), DomainError);
    CHECK_THROWS_AS(slab_optics::vertical_cavity(160.0, 1.0, 925.0), DomainError);
    CHECK_THROWS_AS(slab_optics::vertical_cavity(160.0, 3.46, 0.0), DomainError);
}

TEST_CASE("verify_veff_prefactor: two thirds, independent of everything") {
    const double p1 = slab_optics::verify_veff_prefactor();
    CHECK(std::abs(p1 - 2.0 / 3.0) <= 1e-6);
    CHECK(p1 == slab_optics::verify_veff_prefactor());

    // Cubic scaling of the cavity mode volume.
    const auto a = slab_optics::vertical_cavity(160.0, 3.46, 925.0);
    const auto b = slab_optics::vertical_cavity(320.0, 3.46, 925.0);
    CHECK(b.v_eff_nm3 == doctest::Approx(8.0 * a.v_eff_nm3).epsilon(1e-14));
}
