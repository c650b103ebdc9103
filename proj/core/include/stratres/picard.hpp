#pragma once

#include <vector>

#include "stratres/profile.hpp"

namespace stratres {

// Admissible interval radius and the constants behind it, derived from the
// ball radius epsilon:
//   m2 = f(epsilon/2),
//   L_finv = max |(f^-1)'| over [-m2, m2],
//   L_g    = max |g'|      over [-epsilon/2, epsilon/2],
//   R = min{ 2 m2, 1/sqrt(L_finv L_g), 1/(2 L_finv L_g) },  capped below 1.
// The Lipschitz constant of f^-1 is taken on the actual argument range of the
// inner average (fluxes in [-m2, m2]), not on the slope interval.
struct RadiusBound {
    double R = 0.0;
    double m2 = 0.0;
    double L_finv = 0.0;
    double L_g = 0.0;
};

RadiusBound choose_radius(double epsilon);

struct PicardConfig {
    double epsilon = 0.2; // C^1 ball radius, 0 < epsilon < m0
    double R = 0.0;       // interval radius; 0 selects choose_radius(epsilon).R
    int quad_nodes = 8;   // Gauss-Legendre nodes per panel
    int panels = 64;
    int max_iter = 60;
    double conv_tol = 1e-12; // threshold on the C^1 norm of successive differences

    void validate() const; // throws BadEpsilon / BadConfig
    double resolved_R() const;
};

struct PicardReport {
    int iterations = 0;
    std::vector<double> diffs;   // successive C^1-norm differences
    double observed_ratio = 0.0; // max consecutive diff ratio (round-off floor excluded)
    RadialProfile final;
};

// One application of the integral operator
//   (T u)(r) = int_0^r f^-1( (1/s) int_0^s t g(u'(t)) dt ) ds,
// with the inner average taken as 0 at s = 0. Only the slope channel of `u`
// is read. The returned profile carries both (T u) and (T u)' on the panel
// grid. Throws InnerOverflow if the inner average leaves [-m2, m2], which
// cannot happen for profiles in the epsilon-ball when R respects the bound.
RadialProfile apply_T(const RadialProfile& u, const PicardConfig& config);

// Iterates u_{k+1} = T u_k from u_0 = 0 until the C^1 difference drops below
// conv_tol. Throws NoConvergence after max_iter.
PicardReport picard_solve(const PicardConfig& config);

// C^1 norm (sup|u| + sup|u'|) of a profile, sampled on its grid; used by the
// ball and contraction checks.
double c1_norm(const RadialProfile& u);

} // namespace stratres
