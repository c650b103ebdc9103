#pragma once

#include <vector>

#include "stratres/profile.hpp"

namespace stratres {

// Annulus inner <= r <= outer (disk when inner = 0).
struct ResistanceDomain {
    double inner = 0.0;
    double outer = 1.0;

    void validate() const; // outer > inner >= 0
};

struct ResistanceResult {
    double value = 0.0;
    double error_est = 0.0;
};

// Resistance of a radial shape with the exponential height weight:
//   E = 2 pi * int r e^{-u(r)} / (1 + u'(r)^2) dr
// over the domain, by adaptive quadrature on the profile's piecewise-cubic
// interpolant (relative error target 1e-8, reported in error_est). Throws
// DomainNotCovered when the profile does not span the domain.
ResistanceResult resistance_radial(const RadialProfile& profile, const ResistanceDomain& domain);

// Closed form for the cone u_lambda(r) = lambda (R - r) on the disk of
// radius R:
//   E = 2 pi / (1 + lambda^2) * ( R/lambda - (1 - e^{-lambda R}) / lambda^2 ).
// Scales like 2 pi R / lambda^3 for large lambda and tends to pi R^2 (the
// flat disk) as lambda -> 0.
ResistanceResult resistance_cone(double lambda, double R);

struct ConeDemoRow {
    double lambda = 0.0;
    double resistance = 0.0;
    double error_est = 0.0;
};

// Resistance of the cone family on the disk of radius R for each lambda:
// the tail of the table decreases strictly and tends to zero, so no
// unconstrained minimizer exists. Lambdas must be positive and increasing.
std::vector<ConeDemoRow> nonexistence_demo(double R, const std::vector<double>& lambdas);

} // namespace stratres
