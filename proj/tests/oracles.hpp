#pragma once

// Test-side reference machinery, kept independent of the library paths it is
// used to check: plain bisection, composite Simpson, Richardson tables,
// finite-difference Jacobians, and random C^1-ball profiles.

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "stratres/profile.hpp"

namespace oracles {

// Bisection on [lo, hi] for f(x) = target, assuming f increasing.
inline double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                                double target, double tol = 1e-15, int max_iter = 200) {
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Composite Simpson with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Trapezoid rule on n+1 uniformly spaced samples.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n = 100000) {
    const double h = (b - a) / n;
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    return acc * h;
}

// Two-level Richardson extrapolation of an h^2 expansion sampled at h, h/2, h/4.
inline double richardson_h2(double vh, double vh2, double vh4) {
    const double n1 = (4.0 * vh2 - vh) / 3.0;
    const double n2 = (4.0 * vh4 - vh2) / 3.0;
    return (16.0 * n2 - n1) / 15.0;
}

// Central-difference Jacobian of a planar map.
template <class F>
std::array<std::array<double, 2>, 2> fd_jacobian(F&& f, double x, double y, double h = 1e-6) {
    std::array<std::array<double, 2>, 2> j{};
    const auto fxp = f(x + h, y), fxm = f(x - h, y);
    const auto fyp = f(x, y + h), fym = f(x, y - h);
    j[0][0] = (fxp[0] - fxm[0]) / (2.0 * h);
    j[0][1] = (fyp[0] - fym[0]) / (2.0 * h);
    j[1][0] = (fxp[1] - fxm[1]) / (2.0 * h);
    j[1][1] = (fyp[1] - fym[1]) / (2.0 * h);
    return j;
}

// Smooth random profile with u(0) = 0 and C^1 norm scaled to `norm`:
// u'(t) = a0 + sum_m a_m cos(m pi t / R), integrated in closed form.
struct BallProfile {
    std::array<double, 4> coeff{};
    double R = 0.0;

    double slope(double t) const {
        double v = coeff[0];
        for (int m = 1; m < 4; ++m) v += coeff[m] * std::cos(m * M_PI * t / R);
        return v;
    }
    double height(double t) const {
        double u = coeff[0] * t;
        for (int m = 1; m < 4; ++m)
            u += coeff[m] * (R / (m * M_PI)) * std::sin(m * M_PI * t / R);
        return u;
    }
    double c1_norm(int n = 4000) const {
        double su = 0.0, sv = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double t = R * static_cast<double>(i) / n;
            su = std::max(su, std::abs(height(t)));
            sv = std::max(sv, std::abs(slope(t)));
        }
        return su + sv;
    }
};

inline BallProfile random_ball_profile(std::mt19937_64& rng, double R, double norm) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    BallProfile bp;
    bp.R = R;
    for (auto& c : bp.coeff) c = unit(rng);
    const double scale = norm / bp.c1_norm();
    for (auto& c : bp.coeff) c *= scale;
    return bp;
}

inline stratres::RadialProfile to_profile(const BallProfile& bp, int n_samples = 2048) {
    return stratres::sample_shape([&bp](double t) { return bp.height(t); },
                                  [&bp](double t) { return bp.slope(t); }, 0.0, bp.R, n_samples);
}

} // namespace oracles
