#pragma once

#include <string>

#include "stratres/profile.hpp"

namespace stratres {

enum class SolveMethod { Direct, Parametric };

std::string to_string(SolveMethod m);

struct SolveConfig {
    double eps0 = 1e-3;        // series handoff radius, 0 < eps0 <= series_radius
    double series_radius = 1e-2;
    int series_order = 4;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    // Profiles are consumed through piecewise-cubic interpolation; the step
    // cap keeps the sample spacing small enough that interpolated slopes and
    // slope-rates stay accurate up to the steep region below the cusp.
    double max_step = 0.0025;
    double event_tol = 1e-10;
    SolveMethod method = SolveMethod::Parametric;

    // Direct mode stops at p = m0 - slope_guard and extrapolates the terminal
    // point; the slope-rate diverges like 1/(m0 - p) there, so the direct form
    // cannot reach the boundary itself. Parametric mode is the authoritative
    // path: it integrates the desingularized chart field, which is regular
    // through the critical line, and reports the exact theta = pi/6 crossing.
    double slope_guard = 1e-4;

    // Offset solves: forward r bound, backward r floor, and the |u'| cap past
    // which the graph is handed over to the phase-plane chart.
    double r_forward_bound = 10.0;
    double r_backward_floor = 1e-3;
    double slope_cap = 10.0;

    void validate() const;
};

struct SolveDiagnostics {
    std::size_t n_steps = 0;
    std::size_t n_rejected = 0;
    std::string stop_forward;
    std::string stop_backward;
};

// Axis initial-value problem u(0) = u'(0) = 0: starts from the power series
// at eps0 and integrates to the critical slope. The returned profile has
// strictly increasing r and p, covers [0, r_M], and carries the terminal
// point (r_M, u_M, m0). Throws StepUnderflow / BadConfig.
RadialProfile solve_from_axis(const SolveConfig& config = {}, SolveDiagnostics* diag = nullptr);

// Solution branch through u(r0) = 0 with slope p0, integrated forward and
// backward in the direct form until a critical-slope event, a slope-cap
// handover, or the configured r bounds. Requires r0 > 0 and |3 p0^2 - 1|
// above the singular guard.
RadialProfile solve_from_offset(double r0, double p0, const SolveConfig& config = {},
                                SolveDiagnostics* diag = nullptr);

// Recomputes the terminal point from the profile's final samples using the
// square-root local model q = m0 - p ~ sqrt(2B (r_M - r)) with a second
// corrector pass. Throws NoEvent when the profile carries no terminal.
TerminalPoint refine_terminal(const RadialProfile& profile);

} // namespace stratres
