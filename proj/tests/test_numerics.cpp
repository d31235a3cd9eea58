#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pcw/constants.hpp"
#include "pcw/numerics.hpp"

using namespace pcw;
using pcw::constants::pi;

TEST_CASE("Tolerance validation") {
    CHECK_THROWS_AS((numerics::Tolerance{0.0, 1e-8, 200}.validate()), DomainError);
    CHECK_THROWS_AS((numerics::Tolerance{1e-10, -1.0, 200}.validate()), DomainError);
    CHECK_THROWS_AS((numerics::Tolerance{1e-10, 1e-8, 0}.validate()), DomainError);
    CHECK_NOTHROW(numerics::Tolerance{}.validate());
}

TEST_CASE("integrate: closed-form integrals") {
    const auto sin3 = [](double t) { return std::pow(std::sin(t), 3); };
    CHECK(numerics::integrate(sin3, 0.0, pi) == doctest::Approx(4.0 / 3.0).epsilon(1e-10));

    const auto sin3cos = [](double t) { return std::pow(std::sin(t), 3) * std::cos(t); };
    CHECK(numerics::integrate(sin3cos, 0.0, 0.5 * pi) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("integrate: Fresnel cosine kernel vs series oracle") {
    const auto kernel = [](double t) { return std::cos(0.5 * pi * t * t); };
    const double got = numerics::integrate(kernel, 0.0, 1.0);
    const double expected = oracles::fresnel_series(1.0).c;
    CHECK(got == doctest::Approx(expected).epsilon(1e-10));
    CHECK(got == doctest::Approx(0.7798934).epsilon(1e-6));
}

TEST_CASE("integrate: interval additivity for smooth integrands") {
    // Pin the error target to abs_tol so the bound below is the requested one.
    const numerics::Tolerance tol{1e-10, 1e-13, 400};
    const auto f = [](double x) { return std::exp(-x * x) * std::sin(3.0 * x) + 0.2 * x; };
    for (const double mid : {0.3, 1.1, 2.4}) {
        const double split =
            numerics::integrate(f, 0.0, mid, tol) + numerics::integrate(f, mid, 3.0, tol);
        const double whole = numerics::integrate(f, 0.0, 3.0, tol);
        CHECK(std::abs(split - whole) <= 10.0 * tol.abs_tol);
    }
}

TEST_CASE("integrate: deterministic for identical inputs") {
    const auto f = [](double x) { return std::sin(x * x) + x; };
    const double a = numerics::integrate(f, 0.0, 2.5);
    const double b = numerics::integrate(f, 0.0, 2.5);
    CHECK(a == b); // bit-identical
}

TEST_CASE("integrate: degenerate and invalid input") {
    const auto f = [](double x) { return x; };
    CHECK(numerics::integrate(f, 2.0, 2.0) == 0.0);
    CHECK_THROWS_AS(numerics::integrate(f, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(
        numerics::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0), DomainError);
}

TEST_CASE("integrate: budget exhaustion carries best estimate") {
    const numerics::Tolerance tiny_budget{1e-14, 1e-14, 1};
    const auto wild = [](double x) { return std::sin(1.0 / (x + 1e-4)); };
    try {
        numerics::integrate(wild, 0.0, 1.0, tiny_budget);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError &e) {
        CHECK(std::isfinite(e.best_estimate()));
    }
}

TEST_CASE("fresnel_cs: anchors and limits") {
    const auto zero = numerics::fresnel_cs(0.0);
    CHECK(zero.c == 0.0);
    CHECK(zero.s == 0.0);

    const auto one = numerics::fresnel_cs(1.0);
    const auto oracle = oracles::fresnel_series(1.0);
    CHECK(one.c == doctest::Approx(oracle.c).epsilon(1e-9));
    CHECK(one.s == doctest::Approx(oracle.s).epsilon(1e-9));
    CHECK(one.c == doctest::Approx(0.77989).epsilon(2e-5));
    CHECK(one.s == doctest::Approx(0.43826).epsilon(2e-5));

    // Far tail settles onto the (1/2, 1/2) asymptote; the deviation envelope
    // is 1/(pi u), so u = 20 sits within 2e-2 and u = 40 within 1e-2.
    const auto far = numerics::fresnel_cs(20.0);
    CHECK(std::abs(far.c - 0.5) < 2e-2);
    CHECK(std::abs(far.s - 0.5) < 2e-2);
    const auto farther = numerics::fresnel_cs(37.0, {1e-6, 1e-6, 2000});
    CHECK(std::abs(farther.c - 0.5) < 1e-2);
    CHECK(std::abs(farther.s - 0.5) < 1e-2);

    CHECK_THROWS_AS(numerics::fresnel_cs(-0.1), DomainError);
}

TEST_CASE("fresnel_cs: monotone on [0, 1]") {
    double prev_c = 0.0;
    double prev_s = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const auto cs = numerics::fresnel_cs(i / 40.0);
        CHECK(cs.c >= prev_c);
        CHECK(cs.s >= prev_s);
        prev_c = cs.c;
        prev_s = cs.s;
    }
}

TEST_CASE("fresnel_cs: normalized spiral radius stays within [0, 1.63]") {
    for (const double u : {0.0, 0.3, 0.7, 1.0, 1.4, 1.8, 2.2, 3.0, 4.5, 6.0, 20.0}) {
        const auto cs = numerics::fresnel_cs(u);
        // Components peak at C(1) ~ 0.7799 and S(sqrt 2) ~ 0.7140.
        CHECK(cs.c >= 0.0);
        CHECK(cs.c <= 0.78);
        CHECK(cs.s >= 0.0);
        CHECK(cs.s <= 0.78);
        const double r2 = 2.0 * (cs.c * cs.c + cs.s * cs.s);
        CHECK(r2 >= 0.0);
        CHECK(r2 <= 1.63);
        if (u == 0.0) CHECK(r2 == 0.0);
        if (u == 20.0) CHECK(std::abs(r2 - 1.0) < 0.04);
    }
}

TEST_CASE("find_root: examples") {
    CHECK(numerics::find_root([](double x) { return x - 1.0; }, 0.0, 2.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(numerics::find_root([](double x) { return std::cos(x); }, 0.0, pi) ==
          doctest::Approx(0.5 * pi).epsilon(1e-10));
    const double cbrt2 = numerics::find_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
    CHECK(cbrt2 == doctest::Approx(std::cbrt(2.0)).epsilon(1e-9));
    CHECK(cbrt2 == doctest::Approx(1.259921).epsilon(1e-6));
}

TEST_CASE("find_root: result stays inside the bracket") {
    const auto f = [](double x) { return std::sin(x) - 0.3 * x; };
    const double lo = 1.0, hi = 4.0;
    const double x = numerics::find_root(f, lo, hi);
    CHECK(x >= lo);
    CHECK(x <= hi);
    CHECK(std::abs(f(x)) < 1e-9);
}

TEST_CASE("find_root: error paths") {
    CHECK_THROWS_AS(numerics::find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                    BracketError);
    const numerics::Tolerance starved{1e-30, 1e-30, 2};
    CHECK_THROWS_AS(numerics::find_root([](double x) { return std::cos(x); }, 0.0, 3.0, starved),
                    ConvergenceError);
}

TEST_CASE("fixed_point: identity converges in one step") {
    const auto res = numerics::fixed_point([](double x) { return x; }, 5.0);
    CHECK(res.value == 5.0);
    CHECK(res.trace.converged);
    CHECK(res.trace.iterations() == 1);
}

TEST_CASE("fixed_point: cosine map reaches the plain-iteration limit") {
    const double oracle = oracles::plain_iteration([](double x) { return std::cos(x); }, 1.0, 500);
    const auto res = numerics::fixed_point([](double x) { return std::cos(x); }, 1.0);
    CHECK(res.value == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(res.value == doctest::Approx(0.739085).epsilon(1e-6));
    // Every iteration leaves a residual record.
    CHECK(res.trace.iterations() > 1);
    for (std::size_t i = 0; i < res.trace.steps.size(); ++i)
        CHECK(res.trace.steps[i].iteration == static_cast<int>(i));
    CHECK(res.trace.final_residual() <= numerics::Tolerance{}.abs_tol);
}

TEST_CASE("fixed_point: undamped contraction converges") {
    const auto res =
        numerics::fixed_point([](double x) { return std::cos(x); }, 1.0, {}, 1.0);
    CHECK(res.trace.converged);
    CHECK(res.value == doctest::Approx(0.7390851332151607).epsilon(1e-9));
}

TEST_CASE("fixed_point: Babylonian square root") {
    const auto res = numerics::fixed_point([](double x) { return 0.5 * (x + 2.0 / x); }, 1.0);
    CHECK(res.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    CHECK(res.value == doctest::Approx(1.414214).epsilon(1e-6));
}

TEST_CASE("fixed_point: bounds violation raises divergence with trace") {
    try {
        numerics::fixed_point([](double x) { return 2.0 * x + 1.0; }, 1.0, {}, 1.0, 0.0, 50.0);
        FAIL("expected DivergenceError");
    } catch (const numerics::DivergenceError &e) {
        CHECK(!e.trace().steps.empty());
        CHECK(!e.trace().converged);
    }
}

TEST_CASE("fixed_point: argument validation") {
    CHECK_THROWS_AS(numerics::fixed_point([](double x) { return x; }, 1.0, {}, 0.0), DomainError);
    CHECK_THROWS_AS(numerics::fixed_point([](double x) { return x; }, 1.0, {}, 1.5), DomainError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(numerics::fixed_point([](double x) { return x; }, nan), DomainError);
}

TEST_CASE("fixed_point: trace length capped by max_iter") {
    const numerics::Tolerance tight{1e-16, 1e-16, 5};
    try {
        numerics::fixed_point([](double x) { return std::cos(x); }, 1.0, tight);
        FAIL("expected NonConvergenceError");
    } catch (const numerics::NonConvergenceError &e) {
        CHECK(e.trace().iterations() == 5);
    }
}
