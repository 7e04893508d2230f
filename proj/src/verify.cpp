#include "pgrad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pgrad/threads.hpp"

namespace pgrad {

PolarRaster resample_to_polar(const NetInterpolator& interp, std::size_t n_r,
                              std::size_t n_theta, double r0, double r1, double theta0,
                              double theta1) {
    if (interp.empty())
        throw std::invalid_argument("resample_to_polar: no interior to interpolate");
    if (n_r < 2 || n_theta < 2)
        throw std::invalid_argument("resample_to_polar: raster needs at least 2x2 points");
    PolarRaster out;
    out.n_r = n_r;
    out.n_theta = n_theta;
    out.r0 = r0;
    out.r1 = r1;
    out.theta0 = theta0;
    out.theta1 = theta1;
    out.p.assign(n_r * n_theta, std::numeric_limits<double>::quiet_NaN());
    out.filled.assign(n_r * n_theta, 0);
    parallel_for(0, n_r, [&](std::size_t ir) {
        double r = out.r_at(ir);
        for (std::size_t it = 0; it < n_theta; ++it) {
            auto v = interp.query_polar(r, out.theta_at(it));
            if (v) {
                out.p[ir * n_theta + it] = *v;
                out.filled[ir * n_theta + it] = 1;
            }
        }
    });
    return out;
}

PolarRaster resample_to_polar(const CharGrid& grid, std::size_t n_r, std::size_t n_theta) {
    NetInterpolator interp(grid);
    if (interp.empty())
        throw std::invalid_argument("resample_to_polar: no interior to interpolate");
    return resample_to_polar(interp, n_r, n_theta, interp.r_min(), interp.r_max(),
                             interp.theta_min(), interp.theta_max());
}

ResidualField residual_pde(const PolarRaster& raster) {
    ResidualField out;
    if (raster.n_r < 3 || raster.n_theta < 3) return out;
    double dr = raster.dr(), dth = raster.dtheta();
    double stencil = std::max(dr, dth);
    for (std::size_t ir = 1; ir + 1 < raster.n_r; ++ir) {
        double r = raster.r_at(ir);
        for (std::size_t it = 1; it + 1 < raster.n_theta; ++it) {
            if (!raster.is_filled(ir, it) || !raster.is_filled(ir - 1, it) ||
                !raster.is_filled(ir + 1, it) || !raster.is_filled(ir, it - 1) ||
                !raster.is_filled(ir, it + 1)) {
                ++out.n_skipped;
                continue;
            }
            double pc = raster.at(ir, it);
            if (!(pc > 0.0)) {
                ++out.n_skipped;
                continue;
            }
            double pr = (raster.at(ir + 1, it) - raster.at(ir - 1, it)) / (2.0 * dr);
            double prr = (raster.at(ir + 1, it) - 2.0 * pc + raster.at(ir - 1, it)) / (dr * dr);
            double ptt =
                (raster.at(ir, it + 1) - 2.0 * pc + raster.at(ir, it - 1)) / (dth * dth);
            double rpr = r * pr;
            double value = (rpr + r * r * prr) / pc - (prr + pr / r + ptt / (r * r)) +
                           rpr / pc - rpr * rpr / (pc * pc);
            out.samples.push_back({r, raster.theta_at(it), value, stencil});
        }
    }
    double ss = 0.0;
    for (const ResidualSample& s : out.samples) {
        out.norm_inf = std::max(out.norm_inf, std::abs(s.value));
        ss += s.value * s.value;
    }
    if (!out.samples.empty()) out.norm_l2 = std::sqrt(ss / static_cast<double>(out.samples.size()));
    return out;
}

namespace {

// transport right side for the derivative carried across the segment, both
// algebraic forms, evaluated at the arithmetic midpoint state
struct MidpointForms {
    double q_form, m_form;
};

MidpointForms transport_forms(const StateNode& a, const StateNode& b, bool plus_family) {
    double r = 0.5 * (a.r + b.r);
    double p = 0.5 * (a.p + b.p);
    double u = 0.5 * (a.dp_plus + b.dp_plus);
    double v = 0.5 * (a.dp_minus + b.dp_minus);
    Coefficients c = coefficients(r, p);
    double p_r = c.lambda * (u - v) / 2.0;
    if (plus_family)  // carried quantity: dp_minus
        return {c.q * v * (u - v), c.m * p_r * v};
    return {c.q * u * (v - u), -c.m * p_r * u};
}

}  // namespace

DecompositionReport check_decomposition(const CharGrid& grid, double min_p) {
    DecompositionReport rep;
    ResidualField& rf = rep.residual;
    auto segment = [&](const StateNode& a, const StateNode& b, bool plus_family) {
        if (!(a.p >= min_p) || !(b.p >= min_p)) {
            ++rf.n_skipped;
            return;
        }
        double dth = b.theta - a.theta;
        double mid_r = 0.5 * (a.r + b.r);
        double mid_th = 0.5 * (a.theta + b.theta);
        if (dth == 0.0) {
            rf.samples.push_back({mid_r, mid_th, 0.0, 0.0});
            return;
        }
        MidpointForms f = transport_forms(a, b, plus_family);
        double fd = plus_family ? (b.dp_minus - a.dp_minus) / dth
                                : (b.dp_plus - a.dp_plus) / dth;
        rf.samples.push_back({mid_r, mid_th, fd - f.q_form, std::abs(dth)});
        double denom = std::max(std::abs(f.q_form), std::abs(f.m_form));
        if (denom > 0.0)
            rep.form_diff_max_rel =
                std::max(rep.form_diff_max_rel, std::abs(f.q_form - f.m_form) / denom);
    };

    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j + 1 < grid.n_cols; ++j)
            if (grid.usable(i, j) && grid.usable(i, j + 1))
                segment(grid.at(i, j), grid.at(i, j + 1), true);
    for (std::size_t j = 0; j < grid.n_cols; ++j)
        for (std::size_t i = 0; i + 1 < grid.n_rows; ++i)
            if (grid.usable(i, j) && grid.usable(i + 1, j))
                segment(grid.at(i, j), grid.at(i + 1, j), false);

    double ss = 0.0;
    for (const ResidualSample& s : rf.samples) {
        rf.norm_inf = std::max(rf.norm_inf, std::abs(s.value));
        ss += s.value * s.value;
    }
    if (!rf.samples.empty()) rf.norm_l2 = std::sqrt(ss / static_cast<double>(rf.samples.size()));
    return rep;
}

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

double quarter_exp_step(const StateNode& a, const StateNode& b) {
    return 0.5 * (b.p - a.p) *
           (1.0 / (a.r * a.r - a.p) + 1.0 / (b.r * b.r - b.p));
}

double theta_weight(const StateNode& n) {
    return n.r * n.r * std::pow(n.p, -0.75) / (n.r * n.r - n.p);
}

}  // namespace

IntegralCheck integral_formula_plus(const CharGrid& grid, std::size_t i, std::size_t j) {
    if (i >= grid.n_rows || j >= grid.n_cols || !grid.usable(i, j))
        throw std::invalid_argument("integral_formula_plus: node is not usable");
    const StateNode& anchor = grid.at(0, j);
    double sa = std::sin(anchor.theta), ca = std::cos(anchor.theta);
    double D = 1.0 / (2.0 * kSqrt2 * sa * sa * ca);
    double I = 0.0, S = 0.0, E_prev = 1.0, f_prev = theta_weight(anchor);
    for (std::size_t k = 1; k <= i; ++k) {
        const StateNode& a = grid.at(k - 1, j);
        const StateNode& b = grid.at(k, j);
        I += quarter_exp_step(a, b);
        double E = std::exp(I / 4.0);
        double f = theta_weight(b);
        S += 0.5 * (b.theta - a.theta) * (f_prev * E_prev + f * E);
        E_prev = E;
        f_prev = f;
    }
    IntegralCheck out;
    out.i = i;
    out.j = j;
    out.node = grid.at(i, j);
    out.lhs = out.node.dp_plus;
    out.rhs = 4.0 * std::pow(out.node.p, 0.25) * E_prev / (D + S);
    out.a_or_b = D / E_prev;
    out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.lhs);
    return out;
}

IntegralCheck integral_formula_minus(const CharGrid& grid, std::size_t i, std::size_t j) {
    if (i >= grid.n_rows || j >= grid.n_cols || !grid.usable(i, j))
        throw std::invalid_argument("integral_formula_minus: node is not usable");
    const StateNode& anchor = grid.at(i, 0);
    double sb = std::sin(anchor.theta), cb = std::cos(anchor.theta);
    double D = 1.0 / (2.0 * kSqrt2 * cb * cb * sb);
    double I = 0.0, S = 0.0, E_prev = 1.0, f_prev = theta_weight(anchor);
    for (std::size_t k = 1; k <= j; ++k) {
        const StateNode& a = grid.at(i, k - 1);
        const StateNode& b = grid.at(i, k);
        I += quarter_exp_step(a, b);
        double E = std::exp(I / 4.0);
        double f = theta_weight(b);
        S += 0.5 * (b.theta - a.theta) * (f_prev * E_prev + f * E);
        E_prev = E;
        f_prev = f;
    }
    IntegralCheck out;
    out.i = i;
    out.j = j;
    out.node = grid.at(i, j);
    out.lhs = out.node.dp_minus;
    out.rhs = -4.0 * std::pow(out.node.p, 0.25) * E_prev / (D - S);
    out.a_or_b = D / E_prev;
    out.rel_err = std::abs(out.lhs - out.rhs) / std::abs(out.lhs);
    return out;
}

namespace {

std::pair<std::size_t, std::size_t> locate(const CharGrid& grid, const StateNode& node,
                                           const char* who) {
    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j < grid.n_cols; ++j) {
            const StateNode& n = grid.at(i, j);
            if (n.theta == node.theta && n.r == node.r) return {i, j};
        }
    throw std::invalid_argument(std::string(who) + ": node is not on the grid");
}

}  // namespace

IntegralCheck integral_formula_plus(const CharGrid& grid, const StateNode& node) {
    auto ij = locate(grid, node, "integral_formula_plus");
    return integral_formula_plus(grid, ij.first, ij.second);
}

IntegralCheck integral_formula_minus(const CharGrid& grid, const StateNode& node) {
    auto ij = locate(grid, node, "integral_formula_minus");
    return integral_formula_minus(grid, ij.first, ij.second);
}

SupRatio sup_ratio(const CharGrid& grid, double r_min) {
    SupRatio out;
    bool found = false;
    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j < grid.n_cols; ++j) {
            if (!grid.usable(i, j)) continue;
            const StateNode& n = grid.at(i, j);
            if (n.r < r_min) continue;
            double ratio = std::max(n.dp_plus, -n.dp_minus) / std::sqrt(n.p);
            if (!found || ratio > out.value) {
                out = {ratio, i, j, n.r, n.theta};
                found = true;
            }
        }
    if (!found) throw std::invalid_argument("sup_ratio: empty region");
    return out;
}

SignReport check_signs_and_monotonicity(const CharGrid& grid) {
    SignReport rep;
    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j < grid.n_cols; ++j) {
            if (!grid.usable(i, j)) continue;
            const StateNode& n = grid.at(i, j);
            ++rep.n_checked;
            if (!(n.p > 0.0 && n.p < n.r * n.r)) {
                rep.violations.push_back({i, j, "hyperbolicity"});
                continue;  // derived quantities meaningless here
            }
            if (!(n.dp_plus > 0.0)) rep.violations.push_back({i, j, "dp_plus"});
            if (!(n.dp_minus < 0.0)) rep.violations.push_back({i, j, "dp_minus"});
            if (!(p_radial(n) > 0.0)) rep.violations.push_back({i, j, "p_r"});
        }
    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j + 1 < grid.n_cols; ++j)
            if (grid.usable(i, j) && grid.usable(i, j + 1) &&
                !(grid.at(i, j + 1).p < grid.at(i, j).p))
                rep.violations.push_back({i, j + 1, "monotonicity_plus"});
    for (std::size_t j = 0; j < grid.n_cols; ++j)
        for (std::size_t i = 0; i + 1 < grid.n_rows; ++i)
            if (grid.usable(i, j) && grid.usable(i + 1, j) &&
                !(grid.at(i + 1, j).p < grid.at(i, j).p))
                rep.violations.push_back({i + 1, j, "monotonicity_minus"});
    return rep;
}

}  // namespace pgrad
