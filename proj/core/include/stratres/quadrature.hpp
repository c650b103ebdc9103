#pragma once

#include <functional>
#include <vector>

namespace stratres {

// Gauss-Legendre rule on [-1, 1]. Nodes are ascending; weights sum to 2.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n);

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(mid + half * nodes[i]);
        return half * acc;
    }
};

/// Shared n-point rule (cached per n).
const GaussLegendre& gauss_legendre(int n);

struct QuadratureResult {
    double value = 0.0;
    double error_est = 0.0;
    int panels = 0;
};

// Adaptive panel-bisection quadrature built on an 8-point Gauss-Legendre
// rule; a panel is accepted when |GL(panel) - GL(left) - GL(right)| meets the
// mixed tolerance, and the accumulated split defects form the error estimate.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol = 1e-10,
                                    double abs_tol = 1e-14,
                                    int max_depth = 32);

} // namespace stratres
