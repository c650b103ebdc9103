#include "stratres/radial_ode.hpp"

#include <cmath>
#include <string>

#include "stratres/errors.hpp"

namespace stratres {

double ode_residual(double r, double p, double dp) {
    const double p2 = p * p;
    return r * (1.0 + 4.0 * p2 + 3.0 * p2 * p2) - 2.0 * p * (1.0 + p2)
         + 2.0 * r * dp * (3.0 * p2 - 1.0);
}

double ode_rhs(double r, double p, double singular_guard) {
    if (r <= 0.0)
        fail(ErrorCode::AxisSingularity, "ode_rhs: r = " + std::to_string(r) + " <= 0");
    const double p2 = p * p;
    const double denom = 3.0 * p2 - 1.0;
    if (std::abs(denom) < singular_guard)
        fail(ErrorCode::CriticalSlope,
             "ode_rhs: |3p^2 - 1| = " + std::to_string(std::abs(denom)) + " below guard");
    return -(1.0 + 4.0 * p2 + 3.0 * p2 * p2) / (2.0 * denom)
         + p * (1.0 + p2) / (r * denom);
}

double pde_residual(const Grad2& grad, const SymHess2& hess) {
    const double g2 = grad[0] * grad[0] + grad[1] * grad[1];
    const double w = 1.0 + g2;
    const double laplacian = hess.xx + hess.yy;
    const double hess_gg = hess.xx * grad[0] * grad[0]
                         + 2.0 * hess.xy * grad[0] * grad[1]
                         + hess.yy * grad[1] * grad[1];
    return 2.0 * w * laplacian - 8.0 * hess_gg - w * (1.0 + 3.0 * g2);
}

RadialState AxisSeries::eval(double r, int order) const {
    if (order != 2 && order != 4)
        fail(ErrorCode::BadConfig, "series eval: order must be 2 or 4, got " + std::to_string(order));
    if (!(r >= 0.0))
        fail(ErrorCode::OutOfRadius, "series eval: r must be >= 0");
    if (r > radius * (1.0 + 1e-12))
        fail(ErrorCode::OutOfRadius,
             "series eval: r = " + std::to_string(r) + " beyond validity radius " + std::to_string(radius));
    const double r2 = r * r;
    RadialState s;
    s.r = r;
    s.u = r2 / 8.0;
    s.p = a1 * r;
    if (order == 4) {
        s.u += (a3 / 4.0) * r2 * r2;
        s.p += a3 * r2 * r;
    }
    return s;
}

RadialState series_eval(double r, int order) {
    return AxisSeries{}.eval(r, order);
}

} // namespace stratres
