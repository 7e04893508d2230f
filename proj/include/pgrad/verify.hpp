#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pgrad/interp.hpp"
#include "pgrad/solver.hpp"

namespace pgrad {

struct PolarRaster {
    std::size_t n_r = 0, n_theta = 0;
    double r0 = 0, r1 = 0, theta0 = 0, theta1 = 0;
    std::vector<double> p;  // row-major, ir * n_theta + it; NaN where not covered
    std::vector<char> filled;

    double dr() const { return (r1 - r0) / static_cast<double>(n_r - 1); }
    double dtheta() const { return (theta1 - theta0) / static_cast<double>(n_theta - 1); }
    double r_at(std::size_t ir) const { return r0 + dr() * static_cast<double>(ir); }
    double theta_at(std::size_t it) const { return theta0 + dtheta() * static_cast<double>(it); }
    double at(std::size_t ir, std::size_t it) const { return p[ir * n_theta + it]; }
    bool is_filled(std::size_t ir, std::size_t it) const { return filled[ir * n_theta + it] != 0; }
};

// Covering box defaults to the polar bounding box of the triangulated net.
PolarRaster resample_to_polar(const CharGrid& grid, std::size_t n_r, std::size_t n_theta);
PolarRaster resample_to_polar(const NetInterpolator& interp, std::size_t n_r, std::size_t n_theta,
                              double r0, double r1, double theta0, double theta1);

struct ResidualSample {
    double r, theta, value, stencil;
};

struct ResidualField {
    std::vector<ResidualSample> samples;
    double norm_inf = 0.0;
    double norm_l2 = 0.0;  // root mean square
    std::size_t n_skipped = 0;
};

// Second-order centered stencil of the self-similar equation in polar form:
// (r p_r + r^2 p_rr)/p - (p_rr + p_r/r + p_tt/r^2) + r p_r/p - (r p_r)^2/p^2.
ResidualField residual_pde(const PolarRaster& raster);

struct DecompositionReport {
    ResidualField residual;           // finite differences along grid lines vs midpoint transport
    double form_diff_max_rel = 0.0;   // the two algebraic right-hand sides, relative
};

// min_p windows the norm to segments with both endpoint pressures above it,
// keeping the sample population comparable across refinements.
DecompositionReport check_decomposition(const CharGrid& grid, double min_p = 1e-4);

struct IntegralCheck {
    std::size_t i = 0, j = 0;
    StateNode node;
    double lhs = 0.0;     // stored derivative
    double rhs = 0.0;     // path-integral formula
    double a_or_b = 0.0;  // closed-form prefactor at the node
    double rel_err = 0.0;
};

// Path-integral identity for dp_plus, integrated along the minus
// characteristic from the lower-arc anchor of column j up to node (i, j).
IntegralCheck integral_formula_plus(const CharGrid& grid, std::size_t i, std::size_t j);
// Mirror identity for dp_minus along the plus characteristic from the
// upper-arc anchor of row i.
IntegralCheck integral_formula_minus(const CharGrid& grid, std::size_t i, std::size_t j);
IntegralCheck integral_formula_plus(const CharGrid& grid, const StateNode& node);
IntegralCheck integral_formula_minus(const CharGrid& grid, const StateNode& node);

struct SupRatio {
    double value = 0.0;
    std::size_t i = 0, j = 0;
    double r = 0.0, theta = 0.0;
};

// sup over usable nodes with r >= r_min of max(dp_plus, -dp_minus) / sqrt(p)
SupRatio sup_ratio(const CharGrid& grid, double r_min = 0.0);

struct SignViolation {
    std::size_t i, j;
    std::string what;
};

struct SignReport {
    std::size_t n_checked = 0;
    std::vector<SignViolation> violations;
    bool ok() const { return violations.empty(); }
};

// dp_plus > 0, dp_minus < 0, p_r > 0, 0 < p < r^2 at every usable node, and
// strict decrease of p along rows and columns of the net.
SignReport check_signs_and_monotonicity(const CharGrid& grid);

}  // namespace pgrad
