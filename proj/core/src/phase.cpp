#include "stratres/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stratres/errors.hpp"
#include "stratres/ode45.hpp"
#include "stratres/slope_law.hpp"

namespace stratres {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kPi6 = kPi / 6.0;
constexpr double kPi2 = kPi / 2.0;
} // namespace

FieldValue field_reduced(const PhaseState& s) {
    const double c = std::cos(s.theta);
    const double c2t = std::cos(2.0 * s.theta);
    const double denom = 2.0 * s.x * (2.0 * c2t - 1.0);
    if (s.x == 0.0 || std::abs(2.0 * c2t - 1.0) < 1e-14)
        fail(ErrorCode::ChartSingularity,
             "field_reduced at x = " + std::to_string(s.x) + ", theta = " + std::to_string(s.theta));
    const double numer = s.x * (2.0 - c2t) - std::sin(2.0 * s.theta);
    return {c, c * numer / denom};
}

double desing_factor(const PhaseState& s) {
    return 2.0 * s.x * (2.0 * std::cos(2.0 * s.theta) - 1.0);
}

FieldValue field_desingularized(const PhaseState& s) {
    const double c = std::cos(s.theta);
    const double c2t = std::cos(2.0 * s.theta);
    return {2.0 * s.x * (2.0 * c2t - 1.0) * c,
            c * (s.x * (2.0 - c2t) - std::sin(2.0 * s.theta))};
}

std::string to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::Center: return "center";
        case EquilibriumKind::Saddle: return "saddle";
        case EquilibriumKind::LineOfEquilibria: return "line-of-equilibria";
        case EquilibriumKind::Other: return "other";
    }
    return "unknown";
}

std::string to_string(OrbitClass c) {
    switch (c) {
        case OrbitClass::AxisToCritical: return "axis-to-critical";
        case OrbitClass::ClosedAroundCenter: return "closed-around-center";
        case OrbitClass::VerticalAsymptote: return "vertical-asymptote";
        case OrbitClass::LeavesChart: return "leaves-chart";
    }
    return "unknown";
}

std::string to_string(OrbitEventKind k) {
    switch (k) {
        case OrbitEventKind::CriticalCrossing: return "critical-crossing";
        case OrbitEventKind::Pi2Approach: return "pi2-approach";
        case OrbitEventKind::Closure: return "closure";
        case OrbitEventKind::ChartExit: return "chart-exit";
    }
    return "unknown";
}

namespace {

std::array<std::array<double, 2>, 2> desing_jacobian(const PhaseState& s) {
    const double st = std::sin(s.theta), ct = std::cos(s.theta);
    const double s2t = std::sin(2.0 * s.theta), c2t = std::cos(2.0 * s.theta);
    std::array<std::array<double, 2>, 2> j{};
    j[0][0] = 2.0 * (2.0 * c2t - 1.0) * ct;
    j[0][1] = -2.0 * s.x * (st * (2.0 * c2t - 1.0) + 4.0 * ct * s2t);
    j[1][0] = ct * (2.0 - c2t);
    j[1][1] = -st * (s.x * (2.0 - c2t) - s2t) + ct * (2.0 * s.x * s2t - 2.0 * c2t);
    return j;
}

EquilibriumReport report_for(const PhaseState& point, bool is_line) {
    EquilibriumReport rep;
    rep.location = point;
    rep.is_line = is_line;
    rep.jacobian = desing_jacobian(point);
    const double tr = rep.jacobian[0][0] + rep.jacobian[1][1];
    const double det = rep.jacobian[0][0] * rep.jacobian[1][1]
                     - rep.jacobian[0][1] * rep.jacobian[1][0];
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr / 4.0 - det, 0.0));
    rep.eig1 = tr / 2.0 + disc;
    rep.eig2 = tr / 2.0 - disc;

    const double scale = std::max({std::abs(rep.jacobian[0][1]), std::abs(rep.jacobian[1][0]), 1.0});
    if (is_line) {
        rep.kind = EquilibriumKind::LineOfEquilibria;
        rep.flow_crossing_slope = crossing_slope(std::max(point.x, 1e-3), CrossingLine::ThetaPi2);
    } else if (std::abs(rep.eig1.real()) < 1e-10 * scale && std::abs(rep.eig1.imag()) > 1e-8) {
        rep.kind = EquilibriumKind::Center;
    } else if (det < 0.0) {
        rep.kind = EquilibriumKind::Saddle;
    } else {
        rep.kind = EquilibriumKind::Other;
    }
    return rep;
}

} // namespace

std::vector<EquilibriumReport> find_equilibria(double x_min, double x_max) {
    std::vector<EquilibriumReport> out;
    // Lines theta = pi/2 + k pi carry nothing but equilibria; report the two
    // bounding the principal chart.
    for (double theta : {kPi2, -kPi2}) {
        PhaseState rep{0.5 * (x_min + x_max), theta, 0.0};
        out.push_back(report_for(rep, true));
    }
    const double m0 = kCriticalSlope;
    if (x_min <= m0 && m0 <= x_max) out.push_back(report_for({m0, kPi6, 0.0}, false));
    if (x_min <= -m0 && -m0 <= x_max) out.push_back(report_for({-m0, -kPi6, 0.0}, false));
    return out;
}

EquilibriumReport linearize(const PhaseState& point) {
    const FieldValue f = field_desingularized(point);
    const double scale = std::max(1.0, std::abs(point.x));
    const bool on_line = std::abs(std::cos(point.theta)) < 1e-9;
    if (!on_line && (std::abs(f.dx) > 1e-9 * scale || std::abs(f.dtheta) > 1e-9 * scale))
        fail(ErrorCode::NotEquilibrium,
             "linearize: field = (" + std::to_string(f.dx) + ", " + std::to_string(f.dtheta)
                 + ") at the given point");
    return report_for(point, on_line);
}

double crossing_slope(double x, CrossingLine line) {
    if (!(x > 0.0)) fail(ErrorCode::BadParams, "crossing_slope: x must be positive");
    double theta = 0.0;
    switch (line) {
        case CrossingLine::Theta0: theta = 0.0; break;
        case CrossingLine::ThetaPi6: theta = kPi6; break;
        case CrossingLine::ThetaPi2: theta = kPi2; break;
    }
    const double c2t = std::cos(2.0 * theta);
    const double numer = x * (2.0 - c2t) - std::sin(2.0 * theta);
    const double denom = 2.0 * x * (2.0 * c2t - 1.0);
    if (line == CrossingLine::ThetaPi6) {
        if (std::abs(x - kCriticalSlope) < 1e-12)
            fail(ErrorCode::AtCenter, "crossing_slope: the pi/6 line meets P1 at x = 1/sqrt(3)");
        return numer > 0.0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    }
    return numer / denom;
}

void OrbitConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(max_step > 0.0))
        fail(ErrorCode::BadConfig, "orbit: tolerances and max_step must be positive");
    if (!(event_tol > 0.0) || !(tau_max > 0.0) || !(closure_tol > 0.0))
        fail(ErrorCode::BadConfig, "orbit: event_tol, tau_max, closure_tol must be positive");
    if (!(x_max > 0.0)) fail(ErrorCode::BadConfig, "orbit: x_max must be positive");
}

Orbit integrate_orbit(const PhaseState& start, const OrbitConfig& config) {
    config.validate();
    const FieldValue f0 = field_desingularized(start);
    const double fscale = std::max(1.0, std::abs(start.x));
    if (std::hypot(f0.dx, f0.dtheta) < 1e-13 * fscale)
        fail(ErrorCode::StartIsEquilibrium, "integrate_orbit: start point is an equilibrium");

    Orbit orbit;
    orbit.start = start;
    orbit.axis_handoff = config.axis_handoff;
    const double mu0 = desing_factor(start);
    orbit.orientation = (mu0 < 0.0) ? -1.0 : 1.0;
    const double sigma = orbit.orientation;

    auto rhs = [sigma](double, const StateVec<3>& s) -> StateVec<3> {
        const PhaseState ps{s[0], s[1], s[2]};
        const FieldValue f = field_desingularized(ps);
        return {sigma * f.dx, sigma * f.dtheta, sigma * desing_factor(ps) * std::sin(ps.theta)};
    };

    // launch transversal for the closure guard: hyperplane through the start
    // orthogonal to the initial (x, theta) velocity
    const double vnorm = std::hypot(sigma * f0.dx, sigma * f0.dtheta);
    const double section_nx = sigma * f0.dx / vnorm;
    const double section_nt = sigma * f0.dtheta / vnorm;

    std::vector<EventSpec<3>> events;
    events.push_back({[](double, const StateVec<3>& s) { return s[1] - kPi6; },
                      0, config.stop_at_critical, "critical-crossing"});
    const double pi2_gate = kPi2 - config.event_tol;
    events.push_back({[pi2_gate](double, const StateVec<3>& s) { return s[1] - pi2_gate; },
                      +1, true, "pi2-approach"});
    events.push_back({[pi2_gate](double, const StateVec<3>& s) { return s[1] + pi2_gate; },
                      -1, true, "pi2-approach-lower"});
    events.push_back({[&config](double, const StateVec<3>& s) { return s[0] - config.x_max; },
                      +1, true, "chart-exit"});
    events.push_back({[&, section_nx, section_nt](double, const StateVec<3>& s) {
                          return (s[0] - start.x) * section_nx + (s[1] - start.theta) * section_nt;
                      },
                      +1, true, "closure-section"});
    events.push_back({[&config](double, const StateVec<3>& s) { return s[0] - config.x_min; },
                      -1, true, "axis-edge"});

    IntegrationOptions opts;
    opts.abs_tol = config.abs_tol;
    opts.rel_tol = config.rel_tol;
    opts.max_step = config.max_step;
    opts.event_tol = config.event_tol;

    double tau = 0.0;
    StateVec<3> state{start.x, start.theta, start.y};
    orbit.tau.push_back(0.0);
    orbit.states.push_back(start);
    bool armed = false; // orbit must leave the start neighborhood before closure counts
    // resuming exactly on the transversal can re-trigger the section event a
    // round-off away; ignore closure hits inside a short refractory window
    double closure_mute_until = 0.0;

    while (true) {
        const auto res = integrate_dopri5<3>(rhs, tau, config.tau_max, state, opts, events);
        orbit.n_steps += res.n_steps;
        orbit.n_rejected += res.n_rejected;
        for (std::size_t i = 1; i < res.t.size(); ++i) {
            orbit.tau.push_back(res.t[i]);
            orbit.states.push_back({res.y[i][0], res.y[i][1], res.y[i][2]});
            const double d = std::hypot(res.y[i][0] - start.x, res.y[i][1] - start.theta);
            if (d > 10.0 * config.closure_tol) armed = true;
        }
        for (const auto& hit : res.events) {
            if (hit.event_index == 0 && !config.stop_at_critical)
                orbit.events.push_back({OrbitEventKind::CriticalCrossing, hit.t,
                                        {hit.y[0], hit.y[1], hit.y[2]}});
        }

        if (res.status == IntegrationStatus::TerminalEvent) {
            const auto& hit = *res.terminal_event;
            const PhaseState ps{hit.y[0], hit.y[1], hit.y[2]};
            switch (hit.event_index) {
                case 0:
                    orbit.terminal = OrbitEvent{OrbitEventKind::CriticalCrossing, hit.t, ps};
                    return orbit;
                case 1:
                case 2:
                    orbit.terminal = OrbitEvent{OrbitEventKind::Pi2Approach, hit.t, ps};
                    return orbit;
                case 3:
                case 5:
                    orbit.terminal = OrbitEvent{OrbitEventKind::ChartExit, hit.t, ps};
                    return orbit;
                case 4: {
                    const double dist = std::hypot(ps.x - start.x, ps.theta - start.theta);
                    if (hit.t >= closure_mute_until && armed && dist < config.closure_tol) {
                        orbit.terminal = OrbitEvent{OrbitEventKind::Closure, hit.t, ps};
                        return orbit;
                    }
                    // transversal recrossed away from the start: resume one
                    // micro-step past the section so the event value starts
                    // strictly positive
                    const double dtau = 1e-6;
                    const StateVec<3> k1 = rhs(hit.t, hit.y);
                    StateVec<3> mid;
                    for (int i = 0; i < 3; ++i) mid[i] = hit.y[i] + 0.5 * dtau * k1[i];
                    const StateVec<3> k2 = rhs(hit.t, mid);
                    for (int i = 0; i < 3; ++i) mid[i] = hit.y[i] + 0.5 * dtau * k2[i];
                    const StateVec<3> k3 = rhs(hit.t, mid);
                    for (int i = 0; i < 3; ++i) mid[i] = hit.y[i] + dtau * k3[i];
                    const StateVec<3> k4 = rhs(hit.t, mid);
                    for (int i = 0; i < 3; ++i)
                        state[i] = hit.y[i]
                                 + dtau / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                    tau = hit.t + dtau;
                    closure_mute_until = hit.t + 1e-3;
                    continue;
                }
            }
        }
        if (res.status == IntegrationStatus::ReachedEnd)
            fail(ErrorCode::BudgetExhausted,
                 "integrate_orbit: no terminal event within tau budget "
                     + std::to_string(config.tau_max));
        if (res.status == IntegrationStatus::StepUnderflow)
            fail(ErrorCode::StepUnderflow, "integrate_orbit: step size underflow");
        fail(ErrorCode::BudgetExhausted, "integrate_orbit: step budget exceeded");
    }
}

OrbitClass classify_orbit(const Orbit& orbit) {
    if (!orbit.terminal) return OrbitClass::LeavesChart;
    switch (orbit.terminal->kind) {
        case OrbitEventKind::CriticalCrossing:
            return orbit.axis_handoff ? OrbitClass::AxisToCritical : OrbitClass::LeavesChart;
        case OrbitEventKind::Closure:
            return OrbitClass::ClosedAroundCenter;
        case OrbitEventKind::Pi2Approach:
            return orbit.terminal->state.x <= 0.0 ? OrbitClass::LeavesChart
                                                  : OrbitClass::VerticalAsymptote;
        case OrbitEventKind::ChartExit:
            return OrbitClass::LeavesChart;
    }
    return OrbitClass::LeavesChart;
}

} // namespace stratres
