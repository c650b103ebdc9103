#include "stratres/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stratres/errors.hpp"
#include "stratres/ode45.hpp"
#include "stratres/phase.hpp"
#include "stratres/radial_ode.hpp"
#include "stratres/slope_law.hpp"

namespace stratres {

std::string to_string(SolveMethod m) {
    return m == SolveMethod::Direct ? "direct" : "parametric";
}

void SolveConfig::validate() const {
    if (!(eps0 > 0.0) || !(eps0 <= series_radius))
        fail(ErrorCode::BadConfig, "solve: eps0 must lie in (0, series_radius]");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        fail(ErrorCode::BadConfig, "solve: tolerances must be positive");
    if (!(max_step > 0.0) || !(event_tol > 0.0))
        fail(ErrorCode::BadConfig, "solve: max_step and event_tol must be positive");
    if (series_order != 2 && series_order != 4)
        fail(ErrorCode::BadConfig, "solve: series_order must be 2 or 4");
    if (!(slope_guard > 0.0) || slope_guard >= 0.5 * kCriticalSlope)
        fail(ErrorCode::BadConfig, "solve: slope_guard out of range");
    if (!(r_forward_bound > 0.0) || !(r_backward_floor > 0.0) || !(slope_cap > kCriticalSlope))
        fail(ErrorCode::BadConfig, "solve: bad offset bounds");
}

namespace {

// Series slope-rate p'(r) = a1 + 3 a3 r^2 (valid at r = 0 where ode_rhs is not).
double series_slope_rate(double r, int order) {
    return AxisSeries::a1 + (order == 4 ? 3.0 * AxisSeries::a3 * r * r : 0.0);
}

// Local square-root model at a point (r0, u0, p0) close to the critical
// slope: q = |p - m0| obeys q^2 ~ 2 B (r_M - r). One predictor pass with B at
// the sample, one corrector pass with B at the predicted endpoint.
TerminalPoint extrapolate_terminal(double r0, double u0, double p0) {
    const double m0 = kCriticalSlope;
    const double q0 = std::abs(m0 - std::abs(p0));
    auto slope_rate_scale = [m0](double r, double p) {
        const double p2 = p * p;
        const double a = 2.0 * p * (1.0 + p2) - r * (1.0 + 4.0 * p2 + 3.0 * p2 * p2);
        return -a / (12.0 * r * m0); // B > 0 whenever the critical event fires
    };
    const double b1 = slope_rate_scale(r0, p0);
    double r_m = r0 + q0 * q0 / (2.0 * b1);
    const double b2 = slope_rate_scale(r_m, std::copysign(m0, p0));
    r_m = r0 + q0 * q0 / (b1 + b2);
    // |u'| = m0 -+ q with q = sqrt(2B (r_M - r)); the q-integral contributes
    // (2/3) q0 (r_M - r0), subtracted when approaching from below the
    // critical slope and added from above
    const double from_above = (std::abs(p0) > m0) ? 1.0 : -1.0;
    const double u_m = u0 + std::copysign(m0 + from_above * (2.0 / 3.0) * q0, p0) * (r_m - r0);
    return {r_m, u_m, std::copysign(m0, p0)};
}

RadialProfile axis_profile_direct(const SolveConfig& cfg, SolveDiagnostics* diag) {
    const AxisSeries series{cfg.series_radius};
    const RadialState s0 = series.eval(cfg.eps0, cfg.series_order);

    auto rhs = [](double r, const StateVec<2>& s) -> StateVec<2> {
        return {s[1], ode_rhs(r, s[1])};
    };
    const double guard_slope = kCriticalSlope - cfg.slope_guard;
    std::vector<EventSpec<2>> events;
    events.push_back({[guard_slope](double, const StateVec<2>& s) { return s[1] - guard_slope; },
                      +1, true, "critical-guard"});

    IntegrationOptions opts;
    opts.abs_tol = cfg.abs_tol;
    opts.rel_tol = cfg.rel_tol;
    opts.max_step = cfg.max_step;
    opts.event_tol = cfg.event_tol;

    const auto res = integrate_dopri5<2>(rhs, cfg.eps0, 10.0, {s0.u, s0.p}, opts, events);
    if (res.status == IntegrationStatus::StepUnderflow)
        fail(ErrorCode::StepUnderflow,
             "solve_from_axis: direct form stalled near the critical slope; "
             "switch to the parametric method");
    if (res.status != IntegrationStatus::TerminalEvent)
        fail(ErrorCode::BadConfig, "solve_from_axis: critical slope not reached before r = 10");

    RadialProfile prof;
    prof.provenance = Provenance::Direct;

    // series segment [0, eps0)
    for (int i = 0; i < 4; ++i) {
        const double r = cfg.eps0 * i / 4.0;
        const RadialState s = series.eval(r, cfg.series_order);
        prof.samples.push_back(s);
        prof.dp.push_back(series_slope_rate(r, cfg.series_order));
    }
    for (std::size_t i = 0; i < res.t.size(); ++i) {
        prof.samples.push_back({res.t[i], res.y[i][0], res.y[i][1]});
        prof.dp.push_back(res.dy[i][1]);
    }

    const auto& last = prof.samples.back();
    const TerminalPoint tp = extrapolate_terminal(last.r, last.u, last.p);
    prof.samples.push_back({tp.r_M, tp.u_M, tp.p_M});
    prof.dp.push_back((tp.p_M - last.p) / (tp.r_M - last.r)); // one-sided secant at the cusp
    prof.terminal = tp;

    if (diag) {
        diag->n_steps = res.n_steps;
        diag->n_rejected = res.n_rejected;
        diag->stop_forward = "critical-slope";
    }
    prof.validate();
    return prof;
}

RadialProfile axis_profile_parametric(const SolveConfig& cfg, SolveDiagnostics* diag) {
    const AxisSeries series{cfg.series_radius};
    const RadialState s0 = series.eval(cfg.eps0, cfg.series_order);

    OrbitConfig ocfg;
    ocfg.abs_tol = cfg.abs_tol;
    ocfg.rel_tol = cfg.rel_tol;
    ocfg.max_step = cfg.max_step;
    ocfg.event_tol = cfg.event_tol;
    ocfg.stop_at_critical = true;
    ocfg.axis_handoff = true;
    ocfg.x_max = 100.0;
    ocfg.tau_max = 60.0;

    const Orbit orbit = integrate_orbit({s0.r, std::atan(s0.p), s0.u}, ocfg);
    if (!orbit.terminal || orbit.terminal->kind != OrbitEventKind::CriticalCrossing)
        fail(ErrorCode::BadConfig, "solve_from_axis: axis orbit did not reach theta = pi/6");

    RadialProfile prof;
    prof.provenance = Provenance::Parametric;
    for (int i = 0; i < 4; ++i) {
        const double r = cfg.eps0 * i / 4.0;
        const RadialState s = series.eval(r, cfg.series_order);
        prof.samples.push_back(s);
        prof.dp.push_back(series_slope_rate(r, cfg.series_order));
    }
    for (std::size_t i = 0; i < orbit.states.size(); ++i) {
        const PhaseState& ps = orbit.states[i];
        const double p = std::tan(ps.theta);
        if (!prof.samples.empty() && !(ps.x > prof.samples.back().r)) continue;
        prof.samples.push_back({ps.x, ps.y, p});
        // the true slope-rate diverges at the cusp; within 1e-6 of the
        // critical slope fall back to a one-sided secant
        if (kCriticalSlope - p >= 1e-6) {
            prof.dp.push_back(ode_rhs(ps.x, p));
        } else {
            const std::size_t n = prof.samples.size();
            prof.dp.push_back(n >= 2 ? (prof.samples[n - 1].p - prof.samples[n - 2].p)
                                           / (prof.samples[n - 1].r - prof.samples[n - 2].r)
                                     : series_slope_rate(ps.x, cfg.series_order));
        }
    }

    const PhaseState& end = orbit.terminal->state;
    prof.terminal = TerminalPoint{end.x, end.y, std::tan(end.theta)};
    if (diag) {
        diag->n_steps = orbit.n_steps;
        diag->n_rejected = orbit.n_rejected;
        diag->stop_forward = "critical-slope";
    }
    prof.validate();
    return prof;
}

} // namespace

RadialProfile solve_from_axis(const SolveConfig& config, SolveDiagnostics* diag) {
    config.validate();
    return config.method == SolveMethod::Direct ? axis_profile_direct(config, diag)
                                                : axis_profile_parametric(config, diag);
}

RadialProfile solve_from_offset(double r0, double p0, const SolveConfig& config,
                                SolveDiagnostics* diag) {
    config.validate();
    if (!(r0 > 0.0)) fail(ErrorCode::BadConfig, "solve_from_offset: r0 must be positive");
    if (!std::isfinite(p0) || std::abs(3.0 * p0 * p0 - 1.0) <= kSingularGuard)
        fail(ErrorCode::BadConfig, "solve_from_offset: p0 at the critical slope");

    auto rhs = [](double r, const StateVec<2>& s) -> StateVec<2> {
        return {s[1], ode_rhs(r, s[1])};
    };

    const double m0 = kCriticalSlope;
    std::vector<EventSpec<2>> events;
    // critical slope approached from below / above, either sign
    events.push_back({[&, g = m0 - config.slope_guard](double, const StateVec<2>& s) {
                          return s[1] - g; }, +1, true, "critical-up"});
    events.push_back({[&, g = m0 - config.slope_guard](double, const StateVec<2>& s) {
                          return s[1] + g; }, -1, true, "critical-down"});
    events.push_back({[&, g = m0 + config.slope_guard](double, const StateVec<2>& s) {
                          return s[1] - g; }, -1, true, "critical-above"});
    events.push_back({[&, g = m0 + config.slope_guard](double, const StateVec<2>& s) {
                          return s[1] + g; }, +1, true, "critical-below"});
    events.push_back({[&](double, const StateVec<2>& s) { return std::abs(s[1]) - config.slope_cap; },
                      +1, true, "slope-cap"});

    IntegrationOptions opts;
    opts.abs_tol = config.abs_tol;
    opts.rel_tol = config.rel_tol;
    opts.max_step = config.max_step;
    opts.event_tol = config.event_tol;

    auto stop_reason = [&](const IntegrationResult<2>& res) -> std::string {
        switch (res.status) {
            case IntegrationStatus::ReachedEnd: return "r-bound";
            case IntegrationStatus::TerminalEvent:
                return res.terminal_event->event_index == 4 ? "slope-cap" : "critical-slope";
            case IntegrationStatus::StepUnderflow: return "step-underflow";
            case IntegrationStatus::MaxStepsExceeded: return "step-budget";
        }
        return "unknown";
    };

    const auto fwd = integrate_dopri5<2>(rhs, r0, config.r_forward_bound, {0.0, p0}, opts, events);
    if (fwd.status == IntegrationStatus::StepUnderflow)
        fail(ErrorCode::StepUnderflow, "solve_from_offset: forward branch stalled");
    const auto bwd = integrate_dopri5<2>(rhs, r0, config.r_backward_floor, {0.0, p0}, opts, events);
    if (bwd.status == IntegrationStatus::StepUnderflow)
        fail(ErrorCode::StepUnderflow, "solve_from_offset: backward branch stalled");

    RadialProfile prof;
    prof.provenance = Provenance::Direct;
    for (std::size_t i = bwd.t.size(); i-- > 1;) { // skip duplicate r0 sample
        prof.samples.push_back({bwd.t[i], bwd.y[i][0], bwd.y[i][1]});
        prof.dp.push_back(bwd.dy[i][1]);
    }
    for (std::size_t i = 0; i < fwd.t.size(); ++i) {
        prof.samples.push_back({fwd.t[i], fwd.y[i][0], fwd.y[i][1]});
        prof.dp.push_back(fwd.dy[i][1]);
    }

    // forward end reaching |p| -> m0 from either side gets the extrapolated
    // terminal point
    if (fwd.status == IntegrationStatus::TerminalEvent && fwd.terminal_event->event_index < 4) {
        const auto& last = prof.samples.back();
        const TerminalPoint tp = extrapolate_terminal(last.r, last.u, last.p);
        if (tp.r_M > last.r) {
            prof.samples.push_back({tp.r_M, tp.u_M, tp.p_M});
            prof.dp.push_back((tp.p_M - last.p) / (tp.r_M - last.r));
            prof.terminal = tp;
        }
    }

    if (diag) {
        diag->n_steps = fwd.n_steps + bwd.n_steps;
        diag->n_rejected = fwd.n_rejected + bwd.n_rejected;
        diag->stop_forward = stop_reason(fwd);
        diag->stop_backward = stop_reason(bwd);
    }
    prof.validate();
    return prof;
}

TerminalPoint refine_terminal(const RadialProfile& profile) {
    if (!profile.terminal)
        fail(ErrorCode::NoEvent, "refine_terminal: profile carries no terminal event");
    // last sample comfortably below the critical slope, so the local model is
    // evaluated away from round-off in q = m0 - |p|
    const double m0 = kCriticalSlope;
    for (std::size_t i = profile.samples.size(); i-- > 0;) {
        const RadialState& s = profile.samples[i];
        const double q = m0 - std::abs(s.p);
        if (q > 1e-6 && q < 0.05) return extrapolate_terminal(s.r, s.u, s.p);
    }
    // profile samples jump over the local-model window; fall back to the
    // stored terminal
    return *profile.terminal;
}

} // namespace stratres
