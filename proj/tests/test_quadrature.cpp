#include <doctest.h>

#include <cmath>

#include "stratres/quadrature.hpp"

using namespace stratres;

TEST_CASE("gauss-legendre nodes and weights") {
    for (int n : {2, 4, 8, 16}) {
        const GaussLegendre& rule = gauss_legendre(n);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += rule.weights[i];
            CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[n - 1 - i]).scale(1.0).epsilon(1e-15));
            if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        }
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("8-point rule integrates degree-15 polynomials exactly") {
    const GaussLegendre& rule = gauss_legendre(8);
    // int_0^1 x^k dx = 1/(k+1)
    for (int k = 0; k <= 15; ++k) {
        const double val = rule.integrate([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
        CHECK(val == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
    }
    // degree 16 must show truncation error
    const double val16 = rule.integrate([](double x) { return std::pow(2.0 * x - 1.0, 16); }, 0.0, 1.0);
    CHECK(std::abs(val16 - 1.0 / 17.0) > 1e-12);
}

TEST_CASE("adaptive quadrature on smooth integrands") {
    const auto q = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(q.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    CHECK(std::abs(q.value - (std::exp(1.0) - 1.0)) <= std::max(q.error_est, 1e-13));
}

TEST_CASE("adaptive quadrature resolves endpoint roughness") {
    const auto q = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10, 1e-14);
    CHECK(q.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(q.panels > 8);
}

TEST_CASE("empty interval integrates to zero") {
    const auto q = integrate_adaptive([](double x) { return std::exp(x); }, 1.0, 1.0);
    CHECK(q.value == 0.0);
    CHECK(q.error_est == 0.0);
}
