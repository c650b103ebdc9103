#include "stratres/slope_law.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stratres/errors.hpp"

namespace stratres {

double SlopeLaw::flux_inverse(double y) const {
    if (!std::isfinite(y)) fail(ErrorCode::OutOfRange, "flux_inverse: non-finite argument");
    // Allow a few ulps past m1 so that flux_inverse(momentum_flux(m0))
    // round-trips; anything further out has no preimage.
    if (std::abs(y) > m1 * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()))
        fail(ErrorCode::OutOfRange,
             "flux_inverse: |y| = " + std::to_string(std::abs(y)) + " exceeds peak flux");
    if (y == 0.0) return 0.0;

    const double target = std::min(std::abs(y), momentum_flux(m0));
    // f is odd: invert on [0, m0] and restore the sign at the end.
    double lo = 0.0, hi = m0;
    double x = std::min(target * (1.0 + 2.0 * target * target), m0); // f^-1(y) ~ y + 2y^3 near 0

    for (int iter = 0; iter < 200; ++iter) {
        const double fx = momentum_flux(x) - target;
        if (fx > 0.0) hi = x; else lo = x;
        if (hi - lo <= inverse_tol) break;

        const double dfx = momentum_flux_deriv(x);
        double next = (dfx > 0.0) ? x - fx / dfx : lo;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi); // Newton left the bracket: bisect
        if (std::abs(next - x) <= 0.25 * inverse_tol && hi - lo > 4.0 * inverse_tol)
            next = 0.5 * (lo + hi); // stalled on one side
        x = next;
    }
    x = std::clamp(x, 0.0, m0);
    return std::copysign(x, y);
}

double flux_inverse(double y) {
    static const SlopeLaw law{};
    return law.flux_inverse(y);
}

} // namespace stratres
