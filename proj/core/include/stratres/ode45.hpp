#pragma once

// Embedded Dormand-Prince 5(4) integrator with PI step-size control, a
// 4th-order continuous extension (dense output), and event location by
// bisection on the dense output. Header-only, templated on the (small, fixed)
// state dimension.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace stratres {

template <std::size_t N>
using StateVec = std::array<double, N>;

namespace dopri5 {

inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

// e = b5 - b4: weights of the embedded error estimate.
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Dense-output weights of the 4th-order continuous extension.
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;

} // namespace dopri5

// Interpolating polynomial over one accepted step [t0, t0 + h].
template <std::size_t N>
struct DenseSegment {
    double t0 = 0.0;
    double h = 0.0;
    std::array<StateVec<N>, 5> rcont{};

    StateVec<N> eval(double t) const {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        StateVec<N> out;
        for (std::size_t i = 0; i < N; ++i)
            out[i] = rcont[0][i]
                   + s * (rcont[1][i] + s1 * (rcont[2][i] + s * (rcont[3][i] + s1 * rcont[4][i])));
        return out;
    }

    bool contains(double t) const {
        const double lo = std::min(t0, t0 + h), hi = std::max(t0, t0 + h);
        return t >= lo - 1e-14 * (1.0 + std::abs(lo)) && t <= hi + 1e-14 * (1.0 + std::abs(hi));
    }
};

template <std::size_t N>
struct EventSpec {
    std::function<double(double, const StateVec<N>&)> fn;
    int direction = 0;    // +1: trigger on - to +, -1: + to -, 0: either
    bool terminal = true; // stop the integration at the located root
    const char* name = "";
};

struct IntegrationOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0; // 0: choose automatically
    double event_tol = 1e-10;  // |event function| at the reported root
    std::size_t max_steps = 2'000'000;
    bool store_dense = false;
};

enum class IntegrationStatus { ReachedEnd, TerminalEvent, StepUnderflow, MaxStepsExceeded };

template <std::size_t N>
struct IntegrationResult {
    struct EventHit {
        std::size_t event_index = 0;
        double t = 0.0;
        StateVec<N> y{};
    };

    std::vector<double> t;            // accepted times, t[0] = t_start
    std::vector<StateVec<N>> y;       // states at accepted times
    std::vector<StateVec<N>> dy;      // RHS values at accepted times
    std::vector<DenseSegment<N>> dense;
    std::vector<EventHit> events;
    IntegrationStatus status = IntegrationStatus::ReachedEnd;
    std::optional<EventHit> terminal_event;
    std::size_t n_steps = 0;
    std::size_t n_rejected = 0;
    std::size_t n_fev = 0;

    double t_end() const { return t.back(); }
    const StateVec<N>& y_end() const { return y.back(); }
};

namespace detail {

template <std::size_t N, class Rhs>
double initial_step_guess(Rhs&& rhs, double t0, const StateVec<N>& y0, const StateVec<N>& f0,
                          double dir, double abs_tol, double rel_tol, std::size_t& n_fev) {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = abs_tol + rel_tol * std::abs(y0[i]);
        d0 += (y0[i] / sc) * (y0[i] / sc);
        d1 += (f0[i] / sc) * (f0[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;

    StateVec<N> y1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y0[i] + dir * h0 * f0[i];
    const StateVec<N> f1 = rhs(t0 + dir * h0, y1);
    ++n_fev;
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double sc = abs_tol + rel_tol * std::abs(y0[i]);
        d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
    }
    d2 = std::sqrt(d2 / N) / h0;

    double h1;
    if (std::max(d1, d2) <= 1e-15)
        h1 = std::max(1e-6, h0 * 1e-3);
    else
        h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
    return std::min(100.0 * h0, h1);
}

} // namespace detail

// Integrates y' = rhs(t, y) from (t_start, y_start) toward t_final (either
// direction). Events are checked on every accepted step and located on the
// dense output; a terminal event truncates the step at the root.
template <std::size_t N, class Rhs>
IntegrationResult<N> integrate_dopri5(Rhs&& rhs, double t_start, double t_final,
                                      const StateVec<N>& y_start,
                                      const IntegrationOptions& opts = {},
                                      const std::vector<EventSpec<N>>& events = {}) {
    using namespace dopri5;
    IntegrationResult<N> res;

    const double dir = (t_final >= t_start) ? 1.0 : -1.0;
    double t = t_start;
    StateVec<N> y = y_start;
    StateVec<N> k1 = rhs(t, y);
    res.n_fev = 1;

    res.t.push_back(t);
    res.y.push_back(y);
    res.dy.push_back(k1);

    std::vector<double> event_prev(events.size());
    for (std::size_t e = 0; e < events.size(); ++e) event_prev[e] = events[e].fn(t, y);

    double h = opts.initial_step > 0.0
                   ? opts.initial_step
                   : detail::initial_step_guess<N>(rhs, t, y, k1, dir, opts.abs_tol, opts.rel_tol,
                                                   res.n_fev);
    h = std::min(h, opts.max_step);

    double err_old = 1e-4;
    bool last_rejected = false;
    constexpr double expo1 = 0.2 - 0.04 * 0.75; // PI controller, beta = 0.04
    constexpr double beta = 0.04;
    constexpr double safety = 0.9;

    StateVec<N> k2, k3, k4, k5, k6, k7, y_new, y_stage;

    while (dir * (t_final - t) > 0.0) {
        if (res.n_steps + res.n_rejected >= opts.max_steps) {
            res.status = IntegrationStatus::MaxStepsExceeded;
            return res;
        }
        const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-3);
        if (h < hmin) {
            res.status = IntegrationStatus::StepUnderflow;
            return res;
        }
        h = std::min(h, opts.max_step);
        if (dir * (t + dir * h - t_final) > 0.0) h = dir * (t_final - t);
        const double hs = dir * h; // signed step

        for (std::size_t i = 0; i < N; ++i) y_stage[i] = y[i] + hs * a21 * k1[i];
        k2 = rhs(t + c2 * hs, y_stage);
        for (std::size_t i = 0; i < N; ++i) y_stage[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(t + c3 * hs, y_stage);
        for (std::size_t i = 0; i < N; ++i)
            y_stage[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(t + c4 * hs, y_stage);
        for (std::size_t i = 0; i < N; ++i)
            y_stage[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(t + c5 * hs, y_stage);
        for (std::size_t i = 0; i < N; ++i)
            y_stage[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = rhs(t + hs, y_stage);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        k7 = rhs(t + hs, y_new);
        res.n_fev += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i]
                                    + e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / N);

        const double fac11 = std::pow(std::max(err, 1e-16), expo1);
        if (err <= 1.0) {
            // accepted: build the continuous extension before events can truncate
            DenseSegment<N> seg;
            seg.t0 = t;
            seg.h = hs;
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = y_new[i] - y[i];
                const double bspl = hs * k1[i] - ydiff;
                seg.rcont[0][i] = y[i];
                seg.rcont[1][i] = ydiff;
                seg.rcont[2][i] = bspl;
                seg.rcont[3][i] = ydiff - hs * k7[i] - bspl;
                seg.rcont[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i]
                                        + d6 * k6[i] + d7 * k7[i]);
            }

            double t_new = t + hs;
            bool stop = false;

            // event sweep over the accepted span, earliest root wins
            struct Root { std::size_t idx; double t; };
            std::vector<Root> roots;
            for (std::size_t e = 0; e < events.size(); ++e) {
                const double v0 = event_prev[e];
                const double v1 = events[e].fn(t_new, y_new);
                const bool crossed = (v0 < 0.0 && v1 >= 0.0) || (v0 > 0.0 && v1 <= 0.0);
                const bool dir_ok = events[e].direction == 0
                                 || (events[e].direction > 0 && v0 < v1)
                                 || (events[e].direction < 0 && v0 > v1);
                if (crossed && dir_ok) {
                    double lo = t, hi = t_new, vlo = v0;
                    double tm = hi;
                    for (int it = 0; it < 200; ++it) {
                        tm = 0.5 * (lo + hi);
                        const double vm = events[e].fn(tm, seg.eval(tm));
                        if (std::abs(vm) <= opts.event_tol) break;
                        if ((vlo < 0.0) == (vm < 0.0)) { lo = tm; vlo = vm; } else { hi = tm; }
                        if (std::abs(hi - lo) <= std::numeric_limits<double>::epsilon()
                                                    * std::max(std::abs(lo), 1.0))
                            break;
                    }
                    roots.push_back({e, tm});
                }
            }
            std::sort(roots.begin(), roots.end(),
                      [&](const Root& a, const Root& b) { return dir * a.t < dir * b.t; });
            for (const Root& root : roots) {
                typename IntegrationResult<N>::EventHit hit;
                hit.event_index = root.idx;
                hit.t = root.t;
                hit.y = seg.eval(root.t);
                res.events.push_back(hit);
                if (events[root.idx].terminal) {
                    t_new = root.t;
                    y_new = hit.y;
                    res.terminal_event = hit;
                    res.status = IntegrationStatus::TerminalEvent;
                    stop = true;
                    break;
                }
            }

            t = t_new;
            y = y_new;
            k1 = stop ? rhs(t, y) : k7; // FSAL
            if (stop) ++res.n_fev;
            ++res.n_steps;

            res.t.push_back(t);
            res.y.push_back(y);
            res.dy.push_back(k1);
            if (opts.store_dense) res.dense.push_back(seg);
            for (std::size_t e = 0; e < events.size(); ++e) event_prev[e] = events[e].fn(t, y);

            if (stop) return res;

            double fac = fac11 / std::pow(err_old, beta);
            fac = std::clamp(fac / safety, 0.1, 5.0); // 1/facmax .. 1/facmin
            err_old = std::max(err, 1e-4);
            double h_new = h / fac;
            if (last_rejected) h_new = std::min(h_new, h);
            h = h_new;
            last_rejected = false;
        } else {
            h = h / std::min(5.0, fac11 / safety);
            last_rejected = true;
            ++res.n_rejected;
        }
    }

    res.status = IntegrationStatus::ReachedEnd;
    return res;
}

} // namespace stratres
