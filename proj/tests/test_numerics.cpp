#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ginicell/numerics.hpp"
#include "ginicell/rng.hpp"
#include "oracles.hpp"

namespace num = ginicell::numerics;

TEST_CASE("regularized lower gamma: closed forms") {
    CHECK(num::regularized_lower_gamma(1.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(num::regularized_lower_gamma(3.0, 0.0) == 0.0);
    const double p520 = num::regularized_lower_gamma(5.0, 20.0);
    CHECK(p520 > 0.999);
    CHECK(p520 < 1.0);
    CHECK(p520 == doctest::Approx(oracles::lower_gamma_integer(5, 20.0)).epsilon(1e-12));
}

TEST_CASE("regularized lower gamma: integer-shape series oracle") {
    for (int k : {1, 2, 7, 19, 64}) {
        for (double x : {0.25, 1.0, 6.5, 30.0, 90.0}) {
            const double lib = num::regularized_lower_gamma(k, x);
            const double ora = oracles::lower_gamma_integer(k, x);
            CHECK(std::fabs(lib - ora) < 1e-10);
        }
    }
}

TEST_CASE("regularized gamma: P + Q = 1 on random arguments") {
    ginicell::rng::Stream s(42);
    for (int n = 0; n < 1000; ++n) {
        const double a = 50.0 * s.next_open_double();
        const double x = 100.0 * s.next_double();
        const double p = num::regularized_lower_gamma(a, x);
        const double q = num::regularized_upper_gamma(a, x);
        CHECK(std::fabs(p + q - 1.0) < 1e-12);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("regularized lower gamma: monotone in x") {
    double prev = -1.0;
    for (double x = 0.0; x <= 25.0; x += 0.25) {
        const double p = num::regularized_lower_gamma(4.7, x);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("gamma functions: domain errors") {
    CHECK_THROWS_AS(num::regularized_lower_gamma(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(num::regularized_lower_gamma(-2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(num::regularized_lower_gamma(1.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(num::log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(num::log_gamma(-1.0), std::domain_error);
}

TEST_CASE("log gamma values") {
    CHECK(num::log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(num::log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-13));
    // ln(10!) = ln 3628800
    CHECK(num::log_gamma(11.0) ==
          doctest::Approx(15.104412573075515).epsilon(1e-13));
    CHECK(num::log_gamma(0.5) ==
          doctest::Approx(0.5 * std::log(3.14159265358979323846)).epsilon(1e-13));
}

TEST_CASE("integrate_semi_infinite: exponential examples") {
    auto e = [](double u) { return std::exp(-u); };
    CHECK(num::integrate_semi_infinite(e, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(num::integrate_semi_infinite(e, 3.0) ==
          doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
    auto ue = [](double u) { return u * std::exp(-u); };
    CHECK(num::integrate_semi_infinite(ue, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate_semi_infinite: linearity") {
    ginicell::rng::Stream s(7);
    for (int n = 0; n < 5; ++n) {
        const double c = 0.1 + 20.0 * s.next_double();
        auto f = [](double u) { return std::exp(-0.7 * u) * (1.0 + 0.3 * std::sin(u)); };
        auto cf = [&](double u) { return c * f(u); };
        const double base = num::integrate_semi_infinite(f, 0.0);
        const double scaled = num::integrate_semi_infinite(cf, 0.0);
        CHECK(scaled == doctest::Approx(c * base).epsilon(1e-9));
    }
}

TEST_CASE("integrate_semi_infinite: zero integrand returns zero") {
    auto z = [](double) { return 0.0; };
    CHECK(num::integrate_semi_infinite(z, 0.0) == 0.0);
}

TEST_CASE("integrate_semi_infinite: late bump is not missed") {
    // support far from the lower limit
    auto bump = [](double u) {
        const double d = u - 40.0;
        return std::exp(-0.5 * d * d);
    };
    const double expect = std::sqrt(2.0 * 3.14159265358979323846);
    CHECK(num::integrate_semi_infinite(bump, 0.0) ==
          doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("integrate_finite agrees with Simpson oracle") {
    auto f = [](double u) { return std::cos(3.0 * u) * std::exp(-u * u / 7.0); };
    const double lib = num::integrate_finite(f, -2.0, 5.0);
    const double ora = oracles::simpson(f, -2.0, 5.0, 1e-13);
    CHECK(lib == doctest::Approx(ora).epsilon(1e-10));
}

TEST_CASE("integrate: convergence failure carries best estimate") {
    num::QuadratureSpec tight;
    tight.relative_tolerance = 1e-14;
    tight.absolute_tolerance = 1e-300;
    tight.max_subdivisions = 4;
    auto nasty = [](double u) { return std::cos(3000.0 * u) * std::cos(17.0 * u) + 1.0; };
    bool threw = false;
    try {
        num::integrate_finite(nasty, 0.0, 10.0, tight);
    } catch (const num::ConvergenceError& e) {
        threw = true;
        CHECK(std::isfinite(e.best_estimate));
        CHECK(e.error_bound > 0.0);
    }
    CHECK(threw);
}

TEST_CASE("quadrature spec validation") {
    num::QuadratureSpec bad;
    bad.relative_tolerance = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    num::QuadratureSpec bad2;
    bad2.max_subdivisions = 0;
    CHECK_THROWS_AS(bad2.validate(), std::domain_error);
}
