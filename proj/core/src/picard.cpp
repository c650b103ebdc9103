#include "stratres/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stratres/errors.hpp"
#include "stratres/quadrature.hpp"
#include "stratres/slope_law.hpp"

namespace stratres {

RadiusBound choose_radius(double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < kCriticalSlope))
        fail(ErrorCode::BadEpsilon,
             "choose_radius: epsilon must lie in (0, m0), got " + std::to_string(epsilon));

    RadiusBound out;
    const double half = 0.5 * epsilon;
    out.m2 = momentum_flux(half);

    // Dense sampling of the closed-form derivatives over the relevant
    // intervals, endpoints included. f^-1 maps [-m2, m2] onto [-eps/2, eps/2],
    // so max |(f^-1)'| = 1 / min f' over the slope interval.
    const int n = 100'000;
    double min_fp = momentum_flux_deriv(half);
    double max_gp = std::abs(pressure_gain_deriv(half));
    for (int i = 0; i <= n; ++i) {
        const double x = half * static_cast<double>(i) / n;
        min_fp = std::min(min_fp, momentum_flux_deriv(x));
        max_gp = std::max(max_gp, std::abs(pressure_gain_deriv(x)));
    }
    out.L_finv = 1.0 / min_fp;
    out.L_g = max_gp;

    const double prod = out.L_finv * out.L_g;
    out.R = std::min({2.0 * out.m2, 1.0 / std::sqrt(prod), 1.0 / (2.0 * prod), 1.0});
    return out;
}

void PicardConfig::validate() const {
    if (!(epsilon > 0.0) || !(epsilon < kCriticalSlope))
        fail(ErrorCode::BadEpsilon, "picard: epsilon must lie in (0, m0)");
    if (quad_nodes < 2 || quad_nodes > 64) fail(ErrorCode::BadConfig, "picard: quad_nodes out of range");
    if (panels < 1 || panels > 4096) fail(ErrorCode::BadConfig, "picard: panels out of range");
    if (max_iter < 1) fail(ErrorCode::BadConfig, "picard: max_iter must be positive");
    if (!(conv_tol > 0.0)) fail(ErrorCode::BadConfig, "picard: conv_tol must be positive");
    if (R < 0.0) fail(ErrorCode::BadConfig, "picard: R must be nonnegative");
    if (R > 0.0) {
        const double bound = choose_radius(epsilon).R;
        if (R > bound * (1.0 + 1e-12))
            fail(ErrorCode::BadConfig, "picard: R = " + std::to_string(R)
                                           + " exceeds admissible bound " + std::to_string(bound));
    }
}

double PicardConfig::resolved_R() const {
    return R > 0.0 ? R : choose_radius(epsilon).R;
}

namespace {

// Composite Gauss-Legendre grid on [0, R]: `panels` equal panels with
// `nodes` Gauss points each. Nodal functions are degree-(nodes-1)
// polynomials per panel, evaluated by barycentric interpolation.
class PanelGrid {
public:
    PanelGrid(double R, int panels, int nodes)
        : R_(R), panels_(panels), nodes_(nodes), rule_(gauss_legendre(nodes)) {
        bounds_.resize(panels_ + 1);
        for (int k = 0; k <= panels_; ++k) bounds_[k] = R_ * static_cast<double>(k) / panels_;
        grid_.reserve(static_cast<std::size_t>(panels_) * nodes_);
        for (int k = 0; k < panels_; ++k)
            for (int j = 0; j < nodes_; ++j) grid_.push_back(map_to_panel(k, rule_.nodes[j]));

        bary_.assign(nodes_, 1.0);
        for (int j = 0; j < nodes_; ++j)
            for (int m = 0; m < nodes_; ++m)
                if (m != j) bary_[j] /= (rule_.nodes[j] - rule_.nodes[m]);
    }

    double R() const { return R_; }
    int panels() const { return panels_; }
    int nodes() const { return nodes_; }
    std::size_t size() const { return grid_.size(); }
    double node(std::size_t i) const { return grid_[i]; }
    double bound(int k) const { return bounds_[k]; }
    double panel_halfwidth() const { return 0.5 * (bounds_[1] - bounds_[0]); }

    double map_to_panel(int k, double xi) const {
        return 0.5 * (bounds_[k] + bounds_[k + 1]) + panel_halfwidth() * xi;
    }

    int panel_of(double r) const {
        int k = static_cast<int>(std::floor(r / (bounds_[1] - bounds_[0])));
        return std::clamp(k, 0, panels_ - 1);
    }

    // Barycentric evaluation of a nodal function inside panel k.
    double eval_in_panel(const std::vector<double>& v, int k, double r) const {
        const double xi = (r - 0.5 * (bounds_[k] + bounds_[k + 1])) / panel_halfwidth();
        double num = 0.0, den = 0.0;
        for (int j = 0; j < nodes_; ++j) {
            const double d = xi - rule_.nodes[j];
            if (std::abs(d) < 1e-15) return v[static_cast<std::size_t>(k) * nodes_ + j];
            const double w = bary_[j] / d;
            num += w * v[static_cast<std::size_t>(k) * nodes_ + j];
            den += w;
        }
        return num / den;
    }

    double eval(const std::vector<double>& v, double r) const {
        return eval_in_panel(v, panel_of(r), r);
    }

    // Integral of the interpolant of the nodal function w over one full panel.
    double panel_integral(const std::vector<double>& w, int k) const {
        double acc = 0.0;
        for (int j = 0; j < nodes_; ++j)
            acc += rule_.weights[j] * w[static_cast<std::size_t>(k) * nodes_ + j];
        return panel_halfwidth() * acc;
    }

    // Integral of the interpolant of w from bound(k) to r inside panel k,
    // by re-quadrature on [bound(k), r]; exact for the panel polynomial.
    double partial_integral(const std::vector<double>& w, int k, double r) const {
        const double a = bounds_[k];
        const double mid = 0.5 * (a + r), hw = 0.5 * (r - a);
        double acc = 0.0;
        for (int j = 0; j < nodes_; ++j)
            acc += rule_.weights[j] * eval_in_panel(w, k, mid + hw * rule_.nodes[j]);
        return hw * acc;
    }

    // Cumulative integrals of the nodal function w: value at every grid node
    // and at every panel boundary.
    void cumulative(const std::vector<double>& w, std::vector<double>& at_nodes,
                    std::vector<double>& at_bounds) const {
        at_bounds.assign(panels_ + 1, 0.0);
        for (int k = 0; k < panels_; ++k)
            at_bounds[k + 1] = at_bounds[k] + panel_integral(w, k);
        at_nodes.assign(size(), 0.0);
        for (int k = 0; k < panels_; ++k)
            for (int j = 0; j < nodes_; ++j) {
                const std::size_t i = static_cast<std::size_t>(k) * nodes_ + j;
                at_nodes[i] = at_bounds[k] + partial_integral(w, k, grid_[i]);
            }
    }

private:
    double R_;
    int panels_;
    int nodes_;
    const GaussLegendre& rule_;
    std::vector<double> bounds_;
    std::vector<double> grid_;
    std::vector<double> bary_;
};

// (T u)' at every grid node, given u' at the grid nodes.
std::vector<double> apply_T_slope(const PanelGrid& grid, const std::vector<double>& v,
                                  double m2) {
    std::vector<double> integrand(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        integrand[i] = grid.node(i) * pressure_gain(v[i]);

    std::vector<double> prefix(grid.panels() + 1, 0.0);
    for (int k = 0; k < grid.panels(); ++k)
        prefix[k + 1] = prefix[k] + grid.panel_integral(integrand, k);

    std::vector<double> out(grid.size());
    const double overflow = m2 * (1.0 + 1e-9) + 1e-15;
    for (int k = 0; k < grid.panels(); ++k)
        for (int j = 0; j < grid.nodes(); ++j) {
            const std::size_t i = static_cast<std::size_t>(k) * grid.nodes() + j;
            const double r = grid.node(i);
            const double inner = prefix[k] + grid.partial_integral(integrand, k, r);
            const double avg = inner / r;
            if (std::abs(avg) > overflow)
                fail(ErrorCode::InnerOverflow,
                     "apply_T: inner average " + std::to_string(avg) + " exceeds m2 = "
                         + std::to_string(m2));
            out[i] = flux_inverse(avg);
        }
    return out;
}

// C^1 norm of the function with derivative channel v and u(0) = 0, sampled
// on nodes and panel boundaries.
double c1_norm_nodal(const PanelGrid& grid, const std::vector<double>& v) {
    double sup_v = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) sup_v = std::max(sup_v, std::abs(v[i]));
    for (int k = 0; k <= grid.panels(); ++k)
        sup_v = std::max(sup_v, std::abs(grid.eval(v, std::min(grid.bound(k), grid.R()))));

    std::vector<double> u_nodes, u_bounds;
    grid.cumulative(v, u_nodes, u_bounds);
    double sup_u = 0.0;
    for (double u : u_nodes) sup_u = std::max(sup_u, std::abs(u));
    for (double u : u_bounds) sup_u = std::max(sup_u, std::abs(u));
    return sup_u + sup_v;
}

RadialProfile profile_from_nodal(const PanelGrid& grid, const std::vector<double>& v) {
    std::vector<double> u_nodes, u_bounds;
    grid.cumulative(v, u_nodes, u_bounds);

    RadialProfile prof;
    prof.provenance = Provenance::Picard;
    prof.samples.push_back({0.0, 0.0, grid.eval(v, 0.0)});
    std::size_t i = 0;
    for (int k = 0; k < grid.panels(); ++k) {
        for (int j = 0; j < grid.nodes(); ++j, ++i)
            prof.samples.push_back({grid.node(i), u_nodes[i], v[i]});
        prof.samples.push_back({grid.bound(k + 1), u_bounds[k + 1],
                                grid.eval_in_panel(v, k, grid.bound(k + 1))});
    }
    // the u' channel of the picard iterate extrapolates to 0 at the axis
    prof.samples.front().p = 0.0;
    prof.validate();
    return prof;
}

} // namespace

RadialProfile apply_T(const RadialProfile& u, const PicardConfig& config) {
    config.validate();
    const double R = config.resolved_R();
    if (!u.covers(0.0, R))
        fail(ErrorCode::BadConfig, "apply_T: profile does not cover [0, R]");
    const PanelGrid grid(R, config.panels, config.quad_nodes);

    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = u.slope(grid.node(i));

    const double m2 = momentum_flux(0.5 * config.epsilon);
    return profile_from_nodal(grid, apply_T_slope(grid, v, m2));
}

PicardReport picard_solve(const PicardConfig& config) {
    config.validate();
    const double R = config.resolved_R();
    const PanelGrid grid(R, config.panels, config.quad_nodes);
    const double m2 = momentum_flux(0.5 * config.epsilon);

    std::vector<double> v(grid.size(), 0.0); // u_0' = 0
    PicardReport report;

    for (int iter = 1; iter <= config.max_iter; ++iter) {
        std::vector<double> next = apply_T_slope(grid, v, m2);
        std::vector<double> delta(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) delta[i] = next[i] - v[i];
        const double diff = c1_norm_nodal(grid, delta);
        report.diffs.push_back(diff);
        v = std::move(next);
        report.iterations = iter;
        if (diff < config.conv_tol) {
            // consecutive ratios, skipping pairs already at the round-off floor
            const double floor = 64.0 * std::numeric_limits<double>::epsilon() * config.epsilon;
            double ratio = 0.0;
            for (std::size_t k = 0; k + 1 < report.diffs.size(); ++k)
                if (report.diffs[k] > floor && report.diffs[k + 1] > floor)
                    ratio = std::max(ratio, report.diffs[k + 1] / report.diffs[k]);
            report.observed_ratio = ratio;
            report.final = profile_from_nodal(grid, v);
            return report;
        }
    }
    fail(ErrorCode::NoConvergence,
         "picard_solve: no convergence after " + std::to_string(config.max_iter)
             + " iterations (last diff " + std::to_string(report.diffs.back()) + ")");
}

double c1_norm(const RadialProfile& u) {
    double sup_u = 0.0, sup_p = 0.0;
    for (const RadialState& s : u.samples) {
        sup_u = std::max(sup_u, std::abs(s.u));
        sup_p = std::max(sup_p, std::abs(s.p));
    }
    return sup_u + sup_p;
}

} // namespace stratres
