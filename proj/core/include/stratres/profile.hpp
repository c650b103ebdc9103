#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stratres/radial_ode.hpp"

namespace stratres {

struct TerminalPoint {
    double r_M = 0.0;
    double u_M = 0.0;
    double p_M = 0.0;
};

enum class Provenance { Direct, Parametric, Picard, Shape };

std::string to_string(Provenance p);

// Sampled graph (r, u, u') of a radial solution or candidate shape.
// Samples are strictly increasing in r. `dp` optionally carries the
// slope-rate channel at the samples (same length as `samples`).
struct RadialProfile {
    std::vector<RadialState> samples;
    std::vector<double> dp;
    std::optional<TerminalPoint> terminal;
    Provenance provenance = Provenance::Shape;

    bool empty() const { return samples.empty(); }
    double r_front() const { return samples.front().r; }
    double r_back() const { return samples.back().r; }
    bool covers(double a, double b) const;

    // Piecewise-cubic evaluation. Heights use Hermite pieces with the carried
    // slope channel as nodal derivatives; slopes use Hermite pieces with the
    // `dp` channel when present, otherwise shape-preserving (Fritsch-Carlson)
    // derivative estimates. Throws DomainNotCovered outside the sample range.
    double height(double r) const;
    double slope(double r) const;
    double slope_rate(double r) const; // derivative of the slope interpolant

    void validate() const; // strictly increasing r, finite fields, dp size

private:
    // Lazy Fritsch-Carlson derivatives for the slope channel; profiles are
    // treated as immutable once interpolation begins, and the first slope()
    // call on a dp-less profile must not race with other evaluations.
    const std::vector<double>& slope_derivs() const;
    mutable std::vector<double> slope_derivs_cache_;
};

/// Samples an analytic shape (u, u') on a uniform grid over [a, b].
RadialProfile sample_shape(const std::function<double(double)>& u,
                           const std::function<double(double)>& du,
                           double a, double b, int n_samples);

} // namespace stratres
