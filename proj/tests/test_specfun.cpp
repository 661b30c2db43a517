#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "d2dmotif/specfun.hpp"
#include "d2dmotif/units.hpp"

using namespace d2dmotif;

TEST_CASE("I0 at fixed points") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == doctest::Approx(1.2660658777520082).epsilon(1e-15));
    CHECK(bessel_i0(10.0) == doctest::Approx(2815.716628466254).epsilon(1e-14));
    CHECK(bessel_i0_scaled(0.0) == 1.0);
}

TEST_CASE("I0 matches Boost across the series/asymptotic crossover") {
    for (double x = 0.0; x <= 700.0; x += x < 30 ? 0.137 : 7.3) {
        const double ref = boost::math::cyl_bessel_i(0, x);
        INFO("x = " << x);
        CHECK(bessel_i0(x) == doctest::Approx(ref).epsilon(1e-13));
        CHECK(bessel_i0_scaled(x) == doctest::Approx(ref * std::exp(-x)).epsilon(1e-13));
    }
}

TEST_CASE("scaled I0 stays finite where I0 overflows") {
    const double x = 1e6;
    const double v = bessel_i0_scaled(x);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(1.0 / std::sqrt(2.0 * 3.141592653589793 * x)).epsilon(1e-6));
    CHECK(std::isinf(bessel_i0(x)));
}

TEST_CASE("I0 rejects negative and non-finite input") {
    CHECK_THROWS_AS(bessel_i0(-1.0), DomainError);
    CHECK_THROWS_AS(bessel_i0_scaled(-1e-3), DomainError);
    CHECK_THROWS_AS(bessel_i0(std::nan("")), DomainError);
}

TEST_CASE("regularized lower gamma at fixed points") {
    // P(1, x) = 1 - e^-x and P(2, x) = 1 - (1 + x) e^-x.
    CHECK(regularized_lower_gamma(1.0, 0.5) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-14));
    CHECK(regularized_lower_gamma(2.0, 1.0) == doctest::Approx(1.0 - 2.0 / std::exp(1.0)).epsilon(1e-14));
    CHECK(regularized_lower_gamma(3.0, 0.0) == 0.0);
}

TEST_CASE("regularized lower gamma matches Boost on both branches") {
    for (double a : {0.5, 1.0, 2.0, 5.0, 17.0, 60.0})
        for (double x : {1e-3, 0.3, 1.0, 4.0, 10.0, 30.0, 80.0}) {
            INFO("a = " << a << ", x = " << x);
            const double ref = boost::math::gamma_p(a, x);
            CHECK(regularized_lower_gamma(a, x) == doctest::Approx(ref).epsilon(1e-12).scale(1e-300));
        }
}

TEST_CASE("lower incomplete gamma is the regularized value times Gamma(a)") {
    CHECK(lower_inc_gamma(3.0, 2.0) == doctest::Approx(boost::math::tgamma_lower(3.0, 2.0)).epsilon(1e-13));
}

TEST_CASE("regularized lower gamma argument checks") {
    CHECK_THROWS_AS(regularized_lower_gamma(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(regularized_lower_gamma(1.0, -1.0), DomainError);
}

TEST_CASE("series control validation") {
    SeriesControl c;
    CHECK_NOTHROW(c.validate());
    c.max_terms = 5;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.relative_tolerance = 0.1;
    CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("unit conversions") {
    CHECK(units::dbm_to_watt(30.0) == doctest::Approx(1.0));
    CHECK(units::dbm_to_watt(23.0) == doctest::Approx(0.19952623149688797));
    CHECK(units::db_to_linear(0.0) == 1.0);
    CHECK(units::db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(units::per_km2_to_per_m2(10.0) == doctest::Approx(1e-5));
}
