#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace stratres {

// Point of the arclength phase plane: radius coordinate x, tangent angle
// theta (unwrapped, never folded mod 2*pi), and the height y carried along
// for curve reconstruction.
struct PhaseState {
    double x = 0.0;
    double theta = 0.0;
    double y = 0.0;
};

struct FieldValue {
    double dx = 0.0;
    double dtheta = 0.0;
};

// Reduced planar field
//   x' = cos(theta),
//   theta' = cos(theta) [x (2 - cos 2theta) - sin 2theta] / [2x (2 cos 2theta - 1)].
// Throws ChartSingularity when x = 0 or 2 cos 2theta = 1 (theta = pi/6 + k pi/3 lines).
FieldValue field_reduced(const PhaseState& s);

// Desingularizing factor 2x (2 cos 2theta - 1).
double desing_factor(const PhaseState& s);

// Reduced field multiplied through by the desingularizing factor:
//   x'     = 2x (2 cos 2theta - 1) cos(theta),
//   theta' = cos(theta) [x (2 - cos 2theta) - sin 2theta].
// Total (no singular set). The theta component keeps the product orientation:
// it equals desing_factor * field_reduced.dtheta wherever both are defined.
// With this orientation the linearization at P1 has determinant 9/2 > 0 (a
// linear center, consistent with the closed orbits observed around P1); the
// opposite sign would classify P1 as a saddle.
FieldValue field_desingularized(const PhaseState& s);

enum class EquilibriumKind { Center, Saddle, LineOfEquilibria, Other };

std::string to_string(EquilibriumKind k);

struct EquilibriumReport {
    PhaseState location{};              // representative point
    bool is_line = false;               // true for the theta = pi/2 + k*pi lines
    std::array<std::array<double, 2>, 2> jacobian{};
    std::complex<double> eig1, eig2;
    EquilibriumKind kind = EquilibriumKind::Other;
    double flow_crossing_slope = 0.0;   // set for line equilibria (-1/2)
};

// Equilibria of the desingularized field with x in [x_min, x_max]: the
// equilibrium lines theta = pi/2 + k pi and the isolated centers
// P1 = (1/sqrt 3, pi/6), P2 = (-1/sqrt 3, -pi/6).
std::vector<EquilibriumReport> find_equilibria(double x_min, double x_max);

// Jacobian of the desingularized field by analytic partials, eigenvalues and
// classification. Throws NotEquilibrium if the field does not vanish at the
// point.
EquilibriumReport linearize(const PhaseState& point);

enum class OrbitClass { AxisToCritical, ClosedAroundCenter, VerticalAsymptote, LeavesChart };

std::string to_string(OrbitClass c);

enum class OrbitEventKind { CriticalCrossing, Pi2Approach, Closure, ChartExit };

std::string to_string(OrbitEventKind k);

struct OrbitEvent {
    OrbitEventKind kind = OrbitEventKind::CriticalCrossing;
    double tau = 0.0;
    PhaseState state{};
};

struct OrbitConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double max_step = 0.05;
    double event_tol = 1e-10;
    double tau_max = 60.0;      // clock budget
    double closure_tol = 1e-4;  // return distance accepted as closure
    bool stop_at_critical = false; // make the theta = pi/6 crossing terminal
    bool axis_handoff = false;     // start is the series handoff of the axis solution
    double x_max = 100.0;          // chart exit bound
    // The x = 0 axis is invariant and only reached asymptotically; orbits
    // descending through x_min are reported as chart exits.
    double x_min = 1e-4;

    void validate() const;
};

struct Orbit {
    PhaseState start{};
    bool axis_handoff = false;
    double orientation = 1.0; // +-1 sign applied to the desingularized clock
    std::vector<double> tau;
    std::vector<PhaseState> states;
    std::vector<OrbitEvent> events;
    std::optional<OrbitEvent> terminal;
    std::size_t n_steps = 0;
    std::size_t n_rejected = 0;
};

// Integrates the desingularized field with the auxiliary height equation
//   y' = sin(theta) * 2x (2 cos 2theta - 1)
// until a terminal event: the theta = pi/6 crossing (when stop_at_critical),
// theta reaching +-(pi/2 - event_tol), closure (return to within closure_tol
// of the start, guarded by a same-direction recross of the launch
// transversal), or chart exit. The integration sign is chosen from the
// launch point so the underlying curve's arclength initially increases
// (the desingularizing factor is negative between the pi/6 and pi/2 lines,
// where the desingularized clock runs against arclength).
// Throws StartIsEquilibrium and BudgetExhausted.
Orbit integrate_orbit(const PhaseState& start, const OrbitConfig& config = {});

// AxisToCritical for an axis handoff ending on theta = pi/6;
// ClosedAroundCenter on closure; VerticalAsymptote when theta reached
// +-(pi/2 - tol) with x bounded; LeavesChart otherwise.
OrbitClass classify_orbit(const Orbit& orbit);

enum class CrossingLine { Theta0, ThetaPi6, ThetaPi2 };

// d(theta)/dx of the flow at the named line, from the cos(theta)-cancelled
// ratio; +-infinity at theta = pi/6 (orthogonal crossing) for x != 1/sqrt 3.
// Throws AtCenter when (x, line) is P1, BadParams for x <= 0.
double crossing_slope(double x, CrossingLine line);

} // namespace stratres
