#include "stratres/resistance.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stratres/errors.hpp"
#include "stratres/quadrature.hpp"

namespace stratres {

namespace {
constexpr double kTwoPi = 6.28318530717958647692528676655900577;
}

void ResistanceDomain::validate() const {
    if (!(inner >= 0.0) || !(outer > inner))
        fail(ErrorCode::BadParams, "resistance domain requires outer > inner >= 0");
}

ResistanceResult resistance_radial(const RadialProfile& profile, const ResistanceDomain& domain) {
    domain.validate();
    if (!profile.covers(domain.inner, domain.outer))
        fail(ErrorCode::DomainNotCovered,
             "resistance_radial: profile spans [" + std::to_string(profile.r_front()) + ", "
                 + std::to_string(profile.r_back()) + "], domain needs ["
                 + std::to_string(domain.inner) + ", " + std::to_string(domain.outer) + "]");

    auto integrand = [&profile](double r) {
        const double p = profile.slope(r);
        return r * std::exp(-profile.height(r)) / (1.0 + p * p);
    };
    // clamp the quadrature interval to the sample range; covers() already
    // allowed only round-off excess
    const double a = std::max(domain.inner, profile.r_front());
    const double b = std::min(domain.outer, profile.r_back());
    const QuadratureResult q = integrate_adaptive(integrand, a, b, 1e-10, 1e-15);
    return {kTwoPi * q.value, kTwoPi * q.error_est};
}

ResistanceResult resistance_cone(double lambda, double R) {
    if (!(lambda > 0.0) || !(R > 0.0))
        fail(ErrorCode::BadParams, "resistance_cone: lambda and R must be positive");
    const double z = lambda * R;
    double paren;
    if (z < 1e-4) {
        // R/lambda + expm1(-z)/lambda^2 cancels to O(z) of itself; switch to
        // the series R^2 (1/2 - z/6 + z^2/24 - z^3/120 + ...)
        paren = R * R * (0.5 - z / 6.0 + z * z / 24.0 - z * z * z / 120.0);
    } else {
        paren = R / lambda + std::expm1(-z) / (lambda * lambda);
    }
    const double value = kTwoPi / (1.0 + lambda * lambda) * paren;
    return {value, 8.0 * std::numeric_limits<double>::epsilon() * value};
}

std::vector<ConeDemoRow> nonexistence_demo(double R, const std::vector<double>& lambdas) {
    if (lambdas.empty()) fail(ErrorCode::BadParams, "nonexistence_demo: empty lambda list");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0))
            fail(ErrorCode::BadParams, "nonexistence_demo: lambdas must be positive");
        if (i > 0 && !(lambdas[i] > lambdas[i - 1]))
            fail(ErrorCode::BadParams, "nonexistence_demo: lambdas must increase");
    }
    std::vector<ConeDemoRow> rows;
    rows.reserve(lambdas.size());
    for (double lambda : lambdas) {
        const ResistanceResult res = resistance_cone(lambda, R);
        rows.push_back({lambda, res.value, res.error_est});
    }
    return rows;
}

} // namespace stratres
