#pragma once

#include <array>

namespace stratres {

/// One sample of a radial profile: radius, height, slope.
struct RadialState {
    double r = 0.0;
    double u = 0.0;
    double p = 0.0; // u'(r)
};

/// Gradient of a plane function, (du/dx, du/dy).
using Grad2 = std::array<double, 2>;

/// Symmetric Hessian, stored as {uxx, uxy, uyy}.
struct SymHess2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
};

// Residual of the radial profile equation in divergence-expanded form:
//   r (1 + 4p^2 + 3p^4) - 2p (1 + p^2) + 2 r p' (3p^2 - 1).
// Zero exactly on solutions; total in all arguments.
double ode_residual(double r, double p, double dp);

// Explicit slope-rate form
//   u'' = -(1 + 4p^2 + 3p^4) / (2 (3p^2 - 1)) + p (1 + p^2) / (r (3p^2 - 1)).
// Throws AxisSingularity for r <= 0 and CriticalSlope when |3p^2 - 1| falls
// below `singular_guard` (the slope-rate diverges at the critical slope; the
// direct-form solver must hand over to the parametric chart before that).
inline constexpr double kSingularGuard = 1e-8;
double ode_rhs(double r, double p, double singular_guard = kSingularGuard);

// Residual of the full plane equation:
//   2 (1 + |Du|^2) \Delta u - 8 D^2u(Du, Du) - (1 + |Du|^2)(1 + 3 |Du|^2).
// For the radial lift Du = (p, 0), D2u = diag(u'', p/r) this equals
// -ode_residual(r, p, u'') / r, so the two residuals vanish together.
double pde_residual(const Grad2& grad, const SymHess2& hess);

// Power-series start of the axis solution u(0) = u'(0) = 0:
//   u(r) = r^2/8 + 5 r^4/512 + O(r^6),  p(r) = r/4 + 5 r^3/128 + O(r^5).
// The leading coefficient is u''(0) = 1/4; the cubic slope coefficient
// satisfies 4 a1^2 + 4 a1^3 - 8 a3 = 0 order-by-order in the residual.
struct AxisSeries {
    static constexpr double a1 = 0.25;       // slope coefficient of r
    static constexpr double a3 = 5.0 / 128.0; // slope coefficient of r^3

    // Radius of validity. At the default the order-4 truncation error is
    // ~2e-3 * r^6 ~ 2e-15, below integrator tolerances.
    double radius = 1e-2;

    // Truncated series at r. order must be 2 or 4 (degree of u); throws
    // OutOfRadius past `radius`, BadConfig for other orders.
    RadialState eval(double r, int order = 4) const;
};

/// Series evaluation with the default validity radius.
RadialState series_eval(double r, int order = 4);

} // namespace stratres
