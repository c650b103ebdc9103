#include "stratres/profile.hpp"

#include <algorithm>
#include <cmath>

#include "stratres/errors.hpp"

namespace stratres {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Direct: return "direct";
        case Provenance::Parametric: return "parametric";
        case Provenance::Picard: return "picard";
        case Provenance::Shape: return "shape";
    }
    return "unknown";
}

bool RadialProfile::covers(double a, double b) const {
    if (empty()) return false;
    const double tol = 1e-12 * (1.0 + std::abs(b));
    return a >= r_front() - tol && b <= r_back() + tol;
}

namespace {

std::size_t locate(const std::vector<RadialState>& s, double r) {
    if (s.size() < 2 || r < s.front().r - 1e-12 * (1.0 + std::abs(r))
        || r > s.back().r + 1e-12 * (1.0 + std::abs(r)))
        fail(ErrorCode::DomainNotCovered, "profile evaluation at r = " + std::to_string(r));
    auto it = std::upper_bound(s.begin(), s.end(), r,
                               [](double v, const RadialState& st) { return v < st.r; });
    std::size_t i = static_cast<std::size_t>(std::distance(s.begin(), it));
    if (i == 0) return 0;
    if (i >= s.size()) return s.size() - 2;
    return i - 1;
}

double hermite(double r, double r0, double r1, double y0, double y1, double d0, double d1) {
    const double h = r1 - r0;
    const double s = (r - r0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0
         + (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1;
}

double hermite_deriv(double r, double r0, double r1, double y0, double y1, double d0, double d1) {
    const double h = r1 - r0;
    const double s = (r - r0) / h;
    const double s2 = s * s;
    return ((6.0 * s2 - 6.0 * s) * y0 + (3.0 * s2 - 4.0 * s + 1.0) * h * d0
            + (-6.0 * s2 + 6.0 * s) * y1 + (3.0 * s2 - 2.0 * s) * h * d1) / h;
}

// Fritsch-Carlson shape-preserving nodal derivatives for values y on grid r.
std::vector<double> pchip_derivs(const std::vector<RadialState>& s,
                                 const std::function<double(const RadialState&)>& get) {
    const std::size_t n = s.size();
    std::vector<double> d(n, 0.0);
    if (n < 2) return d;
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = s[i + 1].r - s[i].r;
        delta[i] = (get(s[i + 1]) - get(s[i])) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // one-sided ends with monotonicity limiting
    auto end_deriv = [](double h0, double h1, double d0, double d1) {
        double d0e = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d0e * d0 <= 0.0) d0e = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(d0e) > 3.0 * std::abs(d0)) d0e = 3.0 * d0;
        return d0e;
    };
    d[0] = end_deriv(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_deriv(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

double RadialProfile::height(double r) const {
    const std::size_t i = locate(samples, r);
    return hermite(r, samples[i].r, samples[i + 1].r, samples[i].u, samples[i + 1].u,
                   samples[i].p, samples[i + 1].p);
}

const std::vector<double>& RadialProfile::slope_derivs() const {
    if (slope_derivs_cache_.size() != samples.size())
        slope_derivs_cache_ = pchip_derivs(samples, [](const RadialState& s) { return s.p; });
    return slope_derivs_cache_;
}

double RadialProfile::slope(double r) const {
    const std::size_t i = locate(samples, r);
    if (!dp.empty())
        return hermite(r, samples[i].r, samples[i + 1].r, samples[i].p, samples[i + 1].p,
                       dp[i], dp[i + 1]);
    const auto& derivs = slope_derivs();
    return hermite(r, samples[i].r, samples[i + 1].r, samples[i].p, samples[i + 1].p,
                   derivs[i], derivs[i + 1]);
}

double RadialProfile::slope_rate(double r) const {
    const std::size_t i = locate(samples, r);
    if (!dp.empty())
        return hermite_deriv(r, samples[i].r, samples[i + 1].r, samples[i].p, samples[i + 1].p,
                             dp[i], dp[i + 1]);
    const auto& derivs = slope_derivs();
    return hermite_deriv(r, samples[i].r, samples[i + 1].r, samples[i].p, samples[i + 1].p,
                         derivs[i], derivs[i + 1]);
}

void RadialProfile::validate() const {
    if (samples.size() < 2) fail(ErrorCode::BadConfig, "profile needs at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const RadialState& s = samples[i];
        if (!std::isfinite(s.r) || !std::isfinite(s.u) || !std::isfinite(s.p))
            fail(ErrorCode::BadConfig, "profile sample " + std::to_string(i) + " is not finite");
        if (i > 0 && !(s.r > samples[i - 1].r))
            fail(ErrorCode::BadConfig, "profile radii not strictly increasing at index "
                                           + std::to_string(i));
    }
    if (!dp.empty() && dp.size() != samples.size())
        fail(ErrorCode::BadConfig, "slope-rate channel length mismatch");
}

RadialProfile sample_shape(const std::function<double(double)>& u,
                           const std::function<double(double)>& du,
                           double a, double b, int n_samples) {
    if (!(b > a) || n_samples < 2) fail(ErrorCode::BadParams, "sample_shape: bad grid");
    RadialProfile prof;
    prof.provenance = Provenance::Shape;
    prof.samples.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double r = a + (b - a) * static_cast<double>(i) / (n_samples - 1);
        prof.samples.push_back({r, u(r), du(r)});
    }
    return prof;
}

} // namespace stratres
