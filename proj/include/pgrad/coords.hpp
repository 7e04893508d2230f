#pragma once

#include <stdexcept>

// Self-similar polar coordinates (r, theta) and the pointwise coefficients of
// the characteristic system of the pressure gradient equation.  Everything
// here is valid only inside the hyperbolic band 0 < p < r^2.

namespace pgrad {

inline constexpr double kPi = 3.14159265358979323846;

enum class Family { plus_family, minus_family };

struct PolarPoint {
    double r;
    double theta;
};

struct Coefficients {
    double lambda;  // slope magnitude: dtheta/dr along a characteristic
    double q;       // quadratic interaction coefficient
    double m;       // coefficient of the p_r form of the decomposition
};

// Both parametrizations of the same direction field.
struct CharSlope {
    double dr_dtheta;
    double dtheta_dr;
};

// Raised when a coefficient is requested at or beyond a degenerate state:
// vacuum (p too small) or sonic (r^2 - p too small).  No clamping happens
// anywhere; callers are expected to stop before reaching these states.
class DegeneracyError : public std::domain_error {
public:
    enum class Bound { vacuum, sonic };

    DegeneracyError(Bound which, double r_, double p_);

    Bound bound;
    double r;
    double p;
};

inline constexpr double kVacuumFloor = 1e-14;  // p at or below: vacuum
inline constexpr double kSonicFloor = 1e-12;   // r^2 - p at or below: sonic

void require_hyperbolic(double r, double p, double p_floor = kVacuumFloor,
                        double s_floor = kSonicFloor);

// Maps a first-quadrant point; errors outside it (the solved problem lives in
// xi >= 0, eta >= 0) and at the origin where the angle is undefined.
PolarPoint cartesian_to_polar(double xi, double eta);

double lambda(double r, double p);
double q_coeff(double r, double p);
double m_coeff(double r, double p);
Coefficients coefficients(double r, double p);
CharSlope char_slope(double r, double p, Family family);

}  // namespace pgrad
