#include "pgrad/boundary.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pgrad/coords.hpp"

namespace pgrad {

ArcSample lower_arc(double theta) {
    if (theta < 0.0 || theta > kPi / 4.0 + 1e-15)
        throw std::out_of_range("lower_arc: theta outside [0, pi/4]");
    double s = std::sin(theta), c = std::cos(theta);
    double s2 = s * s;
    return {ArcSample::Which::lower, theta, 2.0 * s, 4.0 * s2 * s2,
            16.0 * s2 * s * c};
}

ArcSample upper_arc(double theta) {
    if (theta < kPi / 4.0 - 1e-15 || theta > kPi / 2.0)
        throw std::out_of_range("upper_arc: theta outside [pi/4, pi/2]");
    double s = std::sin(theta), c = std::cos(theta);
    double c2 = c * c;
    return {ArcSample::Which::upper, theta, 2.0 * c, 4.0 * c2 * c2,
            -16.0 * c2 * c * s};
}

CornerState corner_state() {
    return {std::sqrt(2.0), kPi / 4.0, 1.0, 4.0, -4.0};
}

// Shared antiderivative F(theta) = int dtheta / (2 sin^3(2 theta)), with
// F(pi/4) = 0.  Both transverse ODEs linearize to (g(theta)/psi)' = q g with
// the same right side, g = tan or cot.
static double arc_ode_integral(double theta) {
    double s2 = std::sin(2.0 * theta);
    double c2 = std::cos(2.0 * theta);
    return -c2 / (s2 * s2) / 8.0 + std::log(std::tan(theta)) / 8.0;
}

double lower_arc_transverse(double theta) {
    if (!(theta > 0.0) || theta > kPi / 4.0 + 1e-15)
        throw std::out_of_range("lower_arc_transverse: theta outside (0, pi/4]");
    // 1/psi * tan(theta) = -1/4 + F(theta), psi(pi/4) = -4
    return std::tan(theta) / (-0.25 + arc_ode_integral(theta));
}

double upper_arc_transverse(double theta) {
    if (theta < kPi / 4.0 - 1e-15 || !(theta < kPi / 2.0))
        throw std::out_of_range("upper_arc_transverse: theta outside [pi/4, pi/2)");
    // 1/phi * cot(theta) = 1/4 + F(theta), phi(pi/4) = 4
    return (1.0 / std::tan(theta)) / (0.25 + arc_ode_integral(theta));
}

ExteriorSample exterior_field(double xi, double eta) {
    if (xi < 0.0 || eta < 0.0)
        throw std::domain_error("exterior_field: point outside the first quadrant");
    double r2 = xi * xi + eta * eta;
    // strict interiors only; points within rounding of a circle belong to the
    // analytic side
    double edge = 1e-12 * (1.0 + r2);
    bool in_lower_circle = r2 < 2.0 * eta - edge;  // r < 2 sin(theta)
    bool in_upper_circle = r2 < 2.0 * xi - edge;   // r < 2 cos(theta)
    if (in_lower_circle && in_upper_circle)
        return {Region::interaction, std::numeric_limits<double>::quiet_NaN()};
    if (in_upper_circle) return {Region::rarefaction_eta, eta * eta};
    if (in_lower_circle) return {Region::rarefaction_xi, xi * xi};
    if (xi < 1.0) return {Region::rarefaction_xi, xi * xi};
    if (eta < 1.0) return {Region::rarefaction_eta, eta * eta};
    return {Region::constant_state, 1.0};
}

const char* region_name(Region r) {
    switch (r) {
        case Region::interaction: return "interaction";
        case Region::rarefaction_xi: return "rarefaction_xi";
        case Region::rarefaction_eta: return "rarefaction_eta";
        default: return "constant_state";
    }
}

const char* exterior_region_convention() {
    return "each planar rarefaction occupies its unit strip up to the circle "
           "bounding the interaction lens; the lateral extent beyond the data "
           "circles is a plotting convention, not part of the solved problem";
}

}  // namespace pgrad
