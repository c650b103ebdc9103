#pragma once

#include <cmath>

namespace stratres {

// Scalar laws governing radial extremal profiles in an exponentially
// stratified medium.  `momentum_flux` (f) maps a slope to the radial momentum
// flux it transports; `pressure_gain` (g) is the source density driving the
// profile equation.  f is odd and strictly increasing on (-m0, m0); g is even
// with range (0, 9/16].

// Critical slope: the coefficient of u'' in the radial equation vanishes at
// |u'| = m0, so graph solutions cannot be continued past it.
inline constexpr double kCriticalSlope = 0.5773502691896257645091487805019575; // 1/sqrt(3)

// Peak flux m1 = f(m0) = 3*sqrt(3)/16.
inline constexpr double kPeakFlux = 0.3247595264191644623278258464922298; // 3*sqrt(3)/16

/// f(x) = x / (1 + x^2)^2, total and odd.
inline double momentum_flux(double x) {
    const double w = 1.0 + x * x;
    return x / (w * w);
}

/// f'(x) = (1 - 3x^2) / (1 + x^2)^3, positive exactly on (-m0, m0).
inline double momentum_flux_deriv(double x) {
    const double w = 1.0 + x * x;
    return (1.0 - 3.0 * x * x) / (w * w * w);
}

/// g(x) = (1 + 3x^2) / (2 (1 + x^2)^2), even, range (0, 9/16].
inline double pressure_gain(double x) {
    const double w = 1.0 + x * x;
    return (1.0 + 3.0 * x * x) / (2.0 * w * w);
}

/// g'(x) = x (1 - 3x^2) / (1 + x^2)^3  (= x * f'(x)).
inline double pressure_gain_deriv(double x) {
    return x * momentum_flux_deriv(x);
}

// Numeric inverse of f on [-m0, m0].
struct SlopeLaw {
    double m0 = kCriticalSlope;
    double m1 = kPeakFlux;
    double inverse_tol = 1e-14; // absolute tolerance on the slope

    // Unique x in [-m0, m0] with f(x) = y. Bracketed bisection with Newton
    // refinement; f' vanishes at the endpoints, so Newton alone is unsafe
    // there. Throws OutOfRange for |y| > m1.
    double flux_inverse(double y) const;
};

/// Convenience wrapper with default tolerance.
double flux_inverse(double y);

} // namespace stratres
