#include "stratres/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace stratres {

GaussLegendre::GaussLegendre(int n) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on P_n with the Chebyshev-style initial guess. The
    // three-term recurrence gives both P_n and P_n'.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) { p1 = x; }
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(x), p0 = P_{n-1}(x)
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
    return it->second;
}

namespace {

void integrate_panel(const std::function<double(double)>& f, const GaussLegendre& rule,
                     double a, double b, double whole,
                     double rel_tol, double abs_tol, int depth, int max_depth,
                     QuadratureResult& out) {
    const double mid = 0.5 * (a + b);
    const double left = rule.integrate(f, a, mid);
    const double right = rule.integrate(f, mid, b);
    const double defect = std::abs(whole - left - right);
    const double tol = std::max(abs_tol, rel_tol * std::abs(left + right));
    if (defect <= tol || depth >= max_depth) {
        out.value += left + right;
        out.error_est += defect;
        out.panels += 2;
        return;
    }
    integrate_panel(f, rule, a, mid, left, rel_tol, 0.5 * abs_tol, depth + 1, max_depth, out);
    integrate_panel(f, rule, mid, b, right, rel_tol, 0.5 * abs_tol, depth + 1, max_depth, out);
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double rel_tol, double abs_tol, int max_depth) {
    QuadratureResult out;
    if (a == b) return out;
    const GaussLegendre& rule = gauss_legendre(8);
    const double whole = rule.integrate(f, a, b);
    integrate_panel(f, rule, a, b, whole, rel_tol, abs_tol, 0, max_depth, out);
    return out;
}

} // namespace stratres
