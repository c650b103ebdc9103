#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "stratres/errors.hpp"
#include "stratres/slope_law.hpp"

using namespace stratres;

TEST_CASE("critical constants") {
    CHECK(kCriticalSlope == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(kPeakFlux == doctest::Approx(3.0 * std::sqrt(3.0) / 16.0).epsilon(1e-15));
    CHECK(momentum_flux(kCriticalSlope) == doctest::Approx(kPeakFlux).epsilon(1e-15));
}

TEST_CASE("momentum_flux values") {
    CHECK(momentum_flux(0.0) == 0.0);
    CHECK(momentum_flux(kCriticalSlope) == doctest::Approx(0.324760).epsilon(1e-6));
    CHECK(momentum_flux(0.5) == doctest::Approx(0.32).epsilon(1e-15)); // 0.5 / 1.25^2
    CHECK(momentum_flux(-0.5) == doctest::Approx(-0.32).epsilon(1e-15));
}

TEST_CASE("momentum_flux is odd and strictly increasing on (-m0, m0)") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> inside(-kCriticalSlope + 1e-9, kCriticalSlope - 1e-9);
    for (int i = 0; i < 500; ++i) {
        const double x1 = inside(rng), x2 = inside(rng);
        CHECK(momentum_flux(-x1) == doctest::Approx(-momentum_flux(x1)).epsilon(1e-15));
        if (x1 < x2) CHECK(momentum_flux(x1) < momentum_flux(x2));
        if (x1 > x2) CHECK(momentum_flux(x1) > momentum_flux(x2));
    }
}

TEST_CASE("pressure_gain values and range") {
    CHECK(pressure_gain(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pressure_gain(kCriticalSlope) == doctest::Approx(9.0 / 16.0).epsilon(1e-15));
    for (double x = -50.0; x <= 50.0; x += 0.25) {
        const double g = pressure_gain(x);
        CHECK(g > 0.0);
        CHECK(g <= 9.0 / 16.0 + 1e-15);
        CHECK(g == doctest::Approx(pressure_gain(-x)).epsilon(1e-15)); // even
    }
}

TEST_CASE("closed-form derivatives match finite differences") {
    for (double x : {-0.5, -0.2, 0.0, 0.1, 0.4, 0.57}) {
        const double h = 1e-6;
        const double fp = (momentum_flux(x + h) - momentum_flux(x - h)) / (2.0 * h);
        const double gp = (pressure_gain(x + h) - pressure_gain(x - h)) / (2.0 * h);
        CHECK(momentum_flux_deriv(x) == doctest::Approx(fp).epsilon(1e-8));
        CHECK(pressure_gain_deriv(x) == doctest::Approx(gp).epsilon(1e-7));
    }
}

TEST_CASE("flux_inverse against a bisection oracle") {
    CHECK(flux_inverse(0.0) == 0.0);
    // f' vanishes at m0, so inverting at the peak flux carries square-root
    // conditioning: |x - m0| ~ sqrt(2 ulp(m1) / |f''(m0)|) ~ 4e-9
    CHECK(std::abs(flux_inverse(kPeakFlux) - kCriticalSlope) < 1e-7);
    // inverse of the 0.5 -> 0.32 example, confirmed by plain bisection
    const double oracle =
        oracles::bisect_increasing([](double x) { return momentum_flux(x); }, 0.0, kCriticalSlope, 0.32);
    CHECK(oracle == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(flux_inverse(0.32) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(flux_inverse(-0.32) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("flux_inverse round trips") {
    const SlopeLaw law{};
    for (int i = 0; i <= 200; ++i) {
        const double y = -kPeakFlux + 2.0 * kPeakFlux * i / 200.0;
        CHECK(std::abs(momentum_flux(law.flux_inverse(y)) - y) <= 2.0 * law.inverse_tol);
    }
    for (int i = 0; i <= 200; ++i) {
        const double x = -kCriticalSlope + 1e-6 + (2.0 * (kCriticalSlope - 1e-6)) * i / 200.0;
        // the evaluation of f(x) itself costs ~1 ulp of m1, which the inverse
        // amplifies by 1/f'(x); that floor dominates 2*inverse_tol near +-m0
        const double cond = 4.0 * std::numeric_limits<double>::epsilon() * kPeakFlux
                          / momentum_flux_deriv(x);
        CHECK(std::abs(law.flux_inverse(momentum_flux(x)) - x) <= 2.0 * law.inverse_tol + cond);
    }
}

TEST_CASE("flux_inverse rejects out-of-range fluxes") {
    CHECK_THROWS_AS(flux_inverse(kPeakFlux * 1.01), Error);
    CHECK_THROWS_AS(flux_inverse(-0.4), Error);
    try {
        flux_inverse(0.4);
        FAIL("expected OutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OutOfRange);
    }
    CHECK_THROWS_AS(flux_inverse(std::nan("")), Error);
}
