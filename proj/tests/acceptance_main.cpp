// Acceptance suite: one line per criterion, hard pass/fail, exit code equals
// the number of failed criteria. Runs the library exactly the way the CLI
// does; tolerances are fixed here, not tuned at runtime.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "stratres/phase.hpp"
#include "stratres/picard.hpp"
#include "stratres/radial_ode.hpp"
#include "stratres/resistance.hpp"
#include "stratres/serialize.hpp"
#include "stratres/slope_law.hpp"
#include "stratres/solver.hpp"

using namespace stratres;

namespace {

int failures = 0;

void report(int idx, const char* title, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, title, detail.c_str());
    if (!ok) ++failures;
}

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// Smooth random profile in the C1 ball, same construction as the unit tests.
struct BallFun {
    std::array<double, 4> c{};
    double R = 0.0;
    double slope(double t) const {
        double v = c[0];
        for (int m = 1; m < 4; ++m) v += c[m] * std::cos(m * M_PI * t / R);
        return v;
    }
    double height(double t) const {
        double u = c[0] * t;
        for (int m = 1; m < 4; ++m) u += c[m] * (R / (m * M_PI)) * std::sin(m * M_PI * t / R);
        return u;
    }
};

BallFun random_ball(std::mt19937_64& rng, double R, double norm) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    BallFun f;
    f.R = R;
    for (auto& v : f.c) v = unit(rng);
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = R * i / 4000.0;
        sup = std::max(sup, std::abs(f.height(t)) + std::abs(f.slope(t)));
    }
    double su = 0.0, sv = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = R * i / 4000.0;
        su = std::max(su, std::abs(f.height(t)));
        sv = std::max(sv, std::abs(f.slope(t)));
    }
    const double scale = norm / (su + sv);
    for (auto& v : f.c) v *= scale;
    return f;
}

} // namespace

int main() {
    // ----- 1: maximal-domain reproduction under the parametric method -----
    SolveConfig param_cfg; // parametric by default
    double t0 = now_seconds();
    const RadialProfile param = solve_from_axis(param_cfg);
    const double solve_seconds = now_seconds() - t0;
    {
        const bool ok = param.terminal && std::abs(param.terminal->r_M - 1.230) <= 0.005
                     && std::abs(param.terminal->u_M - 0.228) <= 0.005 && solve_seconds < 1.0;
        report(1, "maximal domain r_M = 1.230 +- 0.005, u(r_M) = 0.228 +- 0.005, < 1 s", ok,
               "r_M = " + format_double(param.terminal->r_M) + ", u_M = "
                   + format_double(param.terminal->u_M) + ", "
                   + format_double(solve_seconds) + " s");
    }

    // ----- 2: terminal slope at the critical value -----
    {
        const double err = std::abs(param.terminal->p_M - kCriticalSlope);
        report(2, "terminal slope = 1/sqrt(3) within 1e-6", err <= 1e-6,
               "|p_M - m0| = " + format_double(err));
    }

    // ----- 3: axis curvature by Richardson extrapolation of u'(r)/r -----
    {
        auto v = [&](double r) { return param.slope(r) / r; };
        const double vh = v(1e-2), vh2 = v(5e-3), vh4 = v(2.5e-3);
        const double n1 = (4.0 * vh2 - vh) / 3.0;
        const double n2 = (4.0 * vh4 - vh2) / 3.0;
        const double extrap = (16.0 * n2 - n1) / 15.0;
        const double err = std::abs(extrap - 0.25);
        report(3, "u''(0) = 0.25 +- 1e-3 by Richardson extrapolation", err <= 1e-3,
               "extrapolated " + format_double(extrap));
    }

    // ----- 4: contraction suite -----
    {
        t0 = now_seconds();
        PicardConfig pcfg; // epsilon = 0.2, R = choose_radius bound
        const double R = pcfg.resolved_R();
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> frac(0.2, 0.999);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const BallFun fu = random_ball(rng, R, pcfg.epsilon * frac(rng));
            const BallFun fw = random_ball(rng, R, pcfg.epsilon * frac(rng));
            auto prof_u = sample_shape([&](double t) { return fu.height(t); },
                                       [&](double t) { return fu.slope(t); }, 0.0, R, 2048);
            auto prof_w = sample_shape([&](double t) { return fw.height(t); },
                                       [&](double t) { return fw.slope(t); }, 0.0, R, 2048);
            const RadialProfile tu = apply_T(prof_u, pcfg);
            const RadialProfile tw = apply_T(prof_w, pcfg);
            double du = 0.0, dp = 0.0;
            for (std::size_t i = 0; i < tu.samples.size(); ++i) {
                du = std::max(du, std::abs(tu.samples[i].u - tw.samples[i].u));
                dp = std::max(dp, std::abs(tu.samples[i].p - tw.samples[i].p));
            }
            double iu = 0.0, ip = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const double t = R * i / 4000.0;
                iu = std::max(iu, std::abs(fu.height(t) - fw.height(t)));
                ip = std::max(ip, std::abs(fu.slope(t) - fw.slope(t)));
            }
            worst = std::max(worst, (du + dp) / (iu + ip));
        }
        const PicardReport rep = picard_solve(pcfg);
        const double suite_seconds = now_seconds() - t0;
        const bool ok = worst <= 0.55 && rep.observed_ratio <= 0.55 && suite_seconds < 5.0;
        report(4, "20 pair contractions <= 0.55 and observed_ratio <= 0.55, < 5 s", ok,
               "worst pair ratio " + format_double(worst) + ", observed "
                   + format_double(rep.observed_ratio) + ", " + format_double(suite_seconds) + " s");
    }

    // ----- 5: cross-solver equivalence -----
    {
        PicardConfig pcfg;
        pcfg.conv_tol = 1e-13;
        const PicardReport rep = picard_solve(pcfg);
        const double R = pcfg.resolved_R();
        SolveConfig dcfg;
        dcfg.method = SolveMethod::Direct;
        const RadialProfile direct = solve_from_axis(dcfg);
        double max_du = 0.0;
        for (int i = 0; i <= 400; ++i) {
            const double r = R * i / 400.0;
            max_du = std::max(max_du, std::abs(rep.final.height(r) - direct.height(r)));
        }
        const double dr_m = std::abs(direct.terminal->r_M - param.terminal->r_M);
        const bool ok = max_du <= 1e-8 && dr_m <= 1e-4;
        report(5, "picard vs direct within 1e-8 in u; direct vs parametric r_M within 1e-4", ok,
               "max |du| = " + format_double(max_du) + ", |dr_M| = " + format_double(dr_m));
    }

    // ----- 6: phase-plane facts -----
    {
        bool ok = true;
        std::string detail;
        for (double x : {0.25, 1.0, 2.0}) {
            ok = ok && std::abs(crossing_slope(x, CrossingLine::Theta0) - 0.5) <= 1e-12;
            ok = ok && std::abs(crossing_slope(x, CrossingLine::ThetaPi2) + 0.5) <= 1e-12;
            if (std::abs(x - kCriticalSlope) > 1e-9)
                ok = ok && std::isinf(crossing_slope(x, CrossingLine::ThetaPi6));
        }
        const FieldValue f1 = field_desingularized({kCriticalSlope, M_PI / 6.0, 0.0});
        const FieldValue f2 = field_desingularized({-kCriticalSlope, -M_PI / 6.0, 0.0});
        ok = ok && std::abs(f1.dx) < 1e-12 && std::abs(f1.dtheta) < 1e-12;
        ok = ok && std::abs(f2.dx) < 1e-12 && std::abs(f2.dtheta) < 1e-12;
        const EquilibriumReport rep = linearize({kCriticalSlope, M_PI / 6.0, 0.0});
        const double re = std::abs(rep.eig1.real());
        const double im = std::abs(std::abs(rep.eig1.imag()) - std::sqrt(4.5));
        ok = ok && re < 1e-10 && im < 1e-10 && rep.kind == EquilibriumKind::Center;
        report(6, "crossing slopes 1/2 and -1/2 to 1e-12, orthogonal pi/6, centers to 1e-10", ok,
               "|Re| = " + format_double(re) + ", ||Im| - sqrt(9/2)| = " + format_double(im));
    }

    // ----- 7: center behavior -----
    {
        const PhaseState start{kCriticalSlope + 1e-2, M_PI / 6.0, 0.0};
        OrbitConfig ocfg;
        const Orbit orbit = integrate_orbit(start, ocfg);
        const double miss = orbit.terminal
                                ? std::hypot(orbit.terminal->state.x - start.x,
                                             orbit.terminal->state.theta - start.theta)
                                : 1e9;
        const bool ok = orbit.terminal && orbit.terminal->kind == OrbitEventKind::Closure
                     && miss < 1e-4;
        report(7, "orbit at distance 1e-2 from P1 closes with return distance < 1e-4", ok,
               "return distance " + format_double(miss));
    }

    // ----- 8: monotonicity and convexity at accepted steps -----
    {
        bool ok = param.samples.size() > 10;
        double min_p = 1e9, min_dp = 1e9;
        for (std::size_t i = 1; i + 1 < param.samples.size(); ++i) {
            min_p = std::min(min_p, param.samples[i].p);
            min_dp = std::min(min_dp, param.dp[i]);
            ok = ok && param.samples[i].p > 0.0 && param.dp[i] > 0.0
               && param.samples[i].p > param.samples[i - 1].p;
        }
        report(8, "u' > 0 and u'' > 0 at every accepted step on (0, r_M)", ok,
               "min u' = " + format_double(min_p) + ", min u'' = " + format_double(min_dp));
    }

    // ----- 9: consistency with the plane equation -----
    {
        double worst = 0.0;
        const double r_m = param.terminal->r_M;
        // u'' reconstructed from the profile by Richardson-extrapolated
        // central differences of the interpolated slope
        auto upp_at = [&](double r) {
            auto fd = [&](double h) {
                return (param.slope(r + h) - param.slope(r - h)) / (2.0 * h);
            };
            return (4.0 * fd(2.5e-4) - fd(5e-4)) / 3.0;
        };
        for (int i = 0; i < 100; ++i) {
            const double r = 0.05 + (r_m - 0.05 - 0.05) * i / 99.0;
            const double p = param.slope(r);
            const double res = pde_residual({p, 0.0}, {upp_at(r), 0.0, p / r});
            worst = std::max(worst, std::abs(res));
        }
        report(9, "radial lift satisfies the plane equation within 1e-5 at 100 radii",
               worst < 1e-5, "max |residual| = " + format_double(worst));
    }

    // ----- 10: non-existence demo -----
    {
        const auto rows = nonexistence_demo(1.0, {1.0, 10.0, 100.0});
        const bool decay = rows.back().resistance < 1e-3 * rows.front().resistance;
        double worst_rel = 0.0;
        for (double lambda : {0.5, 1.0, 2.0, 5.0}) {
            for (double R : {0.5, 1.0, 2.0}) {
                auto cone = sample_shape([=](double r) { return lambda * (R - r); },
                                         [=](double) { return -lambda; }, 0.0, R, 400);
                const double quad = resistance_radial(cone, {0.0, R}).value;
                const double analytic = resistance_cone(lambda, R).value;
                worst_rel = std::max(worst_rel, std::abs(quad - analytic) / analytic);
            }
        }
        const bool ok = decay && worst_rel < 1e-6;
        report(10, "E(100) < 1e-3 E(1) and quadrature matches the cone formula to 1e-6", ok,
               "E(100)/E(1) = " + format_double(rows.back().resistance / rows.front().resistance)
                   + ", worst relative " + format_double(worst_rel));
    }

    // Figure-data reproduction: the axis trajectory and the three steep
    // launches are written as orbit CSVs; only the qualitative classes are
    // checked (no pixel-level ground truth exists).
    {
        std::filesystem::create_directories("figure_data");
        const RadialState handoff = series_eval(1e-3, 4);
        OrbitConfig acfg;
        acfg.stop_at_critical = true;
        acfg.axis_handoff = true;
        const Orbit axis = integrate_orbit({handoff.r, std::atan(handoff.p), handoff.u}, acfg);
        write_atomic("figure_data/axis_trajectory.csv", orbit_to_csv(axis));
        std::string classes = to_string(classify_orbit(axis));
        bool ok = classify_orbit(axis) == OrbitClass::AxisToCritical;
        int idx = 0;
        for (double lambda : {0.1, 0.5, 0.8}) {
            const Orbit orbit = integrate_orbit({1.0, M_PI / 2.0 - lambda, 0.0});
            write_atomic("figure_data/steep_launch_" + std::to_string(idx++) + ".csv",
                         orbit_to_csv(orbit));
            const OrbitClass cls = classify_orbit(orbit);
            classes += ", " + to_string(cls);
            ok = ok && (cls == OrbitClass::ClosedAroundCenter || cls == OrbitClass::VerticalAsymptote);
        }
        report(11, "figure data: axis orbit + three steep launches classified", ok, classes);
    }

    if (failures == 0) std::printf("acceptance: all criteria passed\n");
    else std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures;
}
