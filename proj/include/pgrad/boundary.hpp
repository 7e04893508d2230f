#pragma once

// Exact data on the two circular arcs bounding the wave-interaction region,
// the corner state where they meet, and the analytic flow field outside the
// region (planar rarefactions and the constant state).
//
// Arcs, at unit upstream pressure:
//   lower  r = 2 sin(theta), p = 4 sin^4(theta),  theta in [0, pi/4]
//   upper  r = 2 cos(theta), p = 4 cos^4(theta),  theta in [pi/4, pi/2]
// The lower arc is a plus characteristic, the upper a minus characteristic,
// so each arc's tangential derivative is one of the directional derivatives
// and the transverse one follows from the decomposition ODE along the arc.

namespace pgrad {

struct ArcSample {
    enum class Which { lower, upper };
    Which which;
    double theta;
    double r;
    double p;
    double tangential_dp;  // dp/dtheta along the arc
};

struct CornerState {
    double r;
    double theta;
    double p;
    double dp_plus;
    double dp_minus;
};

ArcSample lower_arc(double theta);  // theta in [0, pi/4]
ArcSample upper_arc(double theta);  // theta in [pi/4, pi/2]
CornerState corner_state();

// Transverse directional derivatives on the arcs, from the closed-form
// solution of the decomposition ODE restricted to each arc (the arc itself is
// a characteristic, which closes the equation).  Domain endpoints excluded:
// theta in (0, pi/4] below, [pi/4, pi/2) above.
double lower_arc_transverse(double theta);  // d-p on the lower arc, < 0
double upper_arc_transverse(double theta);  // d+p on the upper arc, > 0

enum class Region { interaction, rarefaction_xi, rarefaction_eta, constant_state };

struct ExteriorSample {
    Region region;
    double p;  // NaN inside the interaction region (solver territory)
};

// Composite analytic field at unit upstream pressure.  Region boundaries
// evaluate to the adjacent analytic value; only the open interaction lens is
// reported as such.
ExteriorSample exterior_field(double xi, double eta);

const char* region_name(Region r);

// Convention note recorded alongside plotted output.
const char* exterior_region_convention();

}  // namespace pgrad
