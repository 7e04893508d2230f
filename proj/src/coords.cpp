#include "pgrad/coords.hpp"

#include <cmath>
#include <string>

namespace pgrad {

static std::string describe(DegeneracyError::Bound b, double r, double p) {
    if (b == DegeneracyError::Bound::vacuum)
        return "vacuum degeneracy: p = " + std::to_string(p) + " at r = " +
               std::to_string(r);
    return "sonic degeneracy: r^2 - p = " + std::to_string(r * r - p) +
           " at r = " + std::to_string(r);
}

DegeneracyError::DegeneracyError(Bound which, double r_, double p_)
    : std::domain_error(describe(which, r_, p_)), bound(which), r(r_), p(p_) {}

void require_hyperbolic(double r, double p, double p_floor, double s_floor) {
    if (!(p > p_floor))
        throw DegeneracyError(DegeneracyError::Bound::vacuum, r, p);
    if (!(r * r - p > s_floor))
        throw DegeneracyError(DegeneracyError::Bound::sonic, r, p);
}

PolarPoint cartesian_to_polar(double xi, double eta) {
    if (xi < 0.0 || eta < 0.0)
        throw std::domain_error("cartesian_to_polar: point outside the first quadrant");
    if (xi == 0.0 && eta == 0.0)
        throw std::domain_error("cartesian_to_polar: angle undefined at the origin");
    return {std::hypot(xi, eta), std::atan2(eta, xi)};
}

double lambda(double r, double p) {
    require_hyperbolic(r, p);
    return std::sqrt(p / (r * r * (r * r - p)));
}

double q_coeff(double r, double p) {
    require_hyperbolic(r, p);
    return r * r / (4.0 * p * (r * r - p));
}

double m_coeff(double r, double p) {
    double lam = lambda(r, p);
    return lam * r * r * r * r / (2.0 * p * p);
}

Coefficients coefficients(double r, double p) {
    double lam = lambda(r, p);
    double r2 = r * r;
    return {lam, r2 / (4.0 * p * (r2 - p)), lam * r2 * r2 / (2.0 * p * p)};
}

CharSlope char_slope(double r, double p, Family family) {
    double lam = lambda(r, p);
    if (family == Family::plus_family) return {1.0 / lam, lam};
    return {-1.0 / lam, -lam};
}

}  // namespace pgrad
