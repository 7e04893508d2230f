#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pgrad/coords.hpp"
#include "pgrad/interp.hpp"
#include "pgrad/solver.hpp"
#include "pgrad/verify.hpp"
#include "test_util.hpp"

using namespace pgrad;
using pgrad_test::rel_diff;

static CharGrid solved(std::size_t n) {
    SolverConfig cfg;
    cfg.n_seeds = n;
    return solve_interior(cfg);
}

TEST_CASE("interpolation reproduces vertices and stays bounded") {
    CharGrid g = solved(17);
    NetInterpolator interp(g);
    CHECK(!interp.empty());

    for (std::size_t i = 0; i + 1 < g.n_rows; i += 3)
        for (std::size_t j = 0; j + 1 < g.n_cols; j += 3) {
            // frontier orphans sit outside every triangle; stick to full quads
            if (!(g.usable(i, j) && g.usable(i + 1, j) && g.usable(i, j + 1) &&
                  g.usable(i + 1, j + 1)))
                continue;
            const StateNode& n = g.at(i, j);
            auto v = interp.query(n.r * std::cos(n.theta), n.r * std::sin(n.theta));
            REQUIRE(v.has_value());
            CHECK(*v == n.p);
            auto vp = interp.query_polar(n.r, n.theta);
            REQUIRE(vp.has_value());
            CHECK(rel_diff(*vp, n.p) <= 1e-12);
        }

    CHECK(!interp.query(1.8, 1.8).has_value());
    CHECK(!interp.query(1.3, 0.2).has_value());  // inside the box, outside the lens

    // quad centroids stay within the corner values
    for (std::size_t i = 1; i + 1 < g.n_rows; ++i)
        for (std::size_t j = 1; j + 1 < g.n_cols; ++j) {
            if (!(g.usable(i, j) && g.usable(i + 1, j) && g.usable(i, j + 1) &&
                  g.usable(i + 1, j + 1)))
                continue;
            const StateNode* c[4] = {&g.at(i, j), &g.at(i + 1, j), &g.at(i, j + 1),
                                     &g.at(i + 1, j + 1)};
            double cx = 0, cy = 0, lo = 1e300, hi = -1e300;
            for (const StateNode* n : c) {
                cx += n->r * std::cos(n->theta) / 4.0;
                cy += n->r * std::sin(n->theta) / 4.0;
                lo = std::min(lo, n->p);
                hi = std::max(hi, n->p);
            }
            auto v = interp.query(cx, cy);
            REQUIRE(v.has_value());
            CHECK(*v >= lo - 1e-15);
            CHECK(*v <= hi + 1e-15);
        }
}

TEST_CASE("interpolation is exact on linear fields") {
    CharGrid g = solved(17);
    for (StateNode& n : g.nodes)
        if (!std::isnan(n.p)) n.p = n.r * std::cos(n.theta);  // f = x
    NetInterpolator interp(g);
    for (std::size_t i = 0; i + 1 < g.n_rows; ++i)
        for (std::size_t j = 0; j + 1 < g.n_cols; ++j) {
            if (!(g.usable(i, j) && g.usable(i + 1, j + 1))) continue;
            double cx = 0.5 * (g.at(i, j).r * std::cos(g.at(i, j).theta) +
                               g.at(i + 1, j + 1).r * std::cos(g.at(i + 1, j + 1).theta));
            double cy = 0.5 * (g.at(i, j).r * std::sin(g.at(i, j).theta) +
                               g.at(i + 1, j + 1).r * std::sin(g.at(i + 1, j + 1).theta));
            auto v = interp.query(cx, cy);
            if (v) CHECK(rel_diff(*v, cx) <= 1e-12);
        }
}

TEST_CASE("polar resampling") {
    CharGrid g = solved(17);
    PolarRaster ras = resample_to_polar(g, 33, 33);
    CHECK(ras.n_r == 33);
    CHECK(ras.n_theta == 33);
    std::size_t filled = 0;
    for (std::size_t ir = 0; ir < ras.n_r; ++ir)
        for (std::size_t it = 0; it < ras.n_theta; ++it) {
            if (ras.is_filled(ir, it)) {
                ++filled;
                CHECK(std::isfinite(ras.at(ir, it)));
            } else {
                CHECK(std::isnan(ras.at(ir, it)));
            }
        }
    CHECK(filled > 33 * 33 / 4);
    CHECK(filled < 33 * 33);

    NetInterpolator interp(g);
    CHECK_THROWS_AS(resample_to_polar(interp, 1, 33, 0.6, 0.9, 0.5, 1.0),
                    std::invalid_argument);
}

TEST_CASE("pde residual vanishes on constant pressure") {
    PolarRaster ras;
    ras.n_r = 33;
    ras.n_theta = 33;
    ras.r0 = 0.5;
    ras.r1 = 1.2;
    ras.theta0 = 0.3;
    ras.theta1 = 1.2;
    ras.p.assign(33 * 33, 1.0);
    ras.filled.assign(33 * 33, 1);
    ResidualField res = residual_pde(ras);
    CHECK(res.norm_inf == 0.0);
    CHECK(res.norm_l2 == 0.0);
    CHECK(res.samples.size() == 31 * 31);
}

TEST_CASE("pde residual is second order on an exact solution") {
    // p = (r cos theta)^2 solves the equation; only stencil truncation remains
    auto residual_at = [](std::size_t m) {
        PolarRaster ras;
        ras.n_r = m;
        ras.n_theta = m;
        ras.r0 = 0.5;
        ras.r1 = 1.0;
        ras.theta0 = 0.2;
        ras.theta1 = 0.9;
        ras.p.resize(m * m);
        ras.filled.assign(m * m, 1);
        for (std::size_t ir = 0; ir < m; ++ir)
            for (std::size_t it = 0; it < m; ++it) {
                double c = ras.r_at(ir) * std::cos(ras.theta_at(it));
                ras.p[ir * m + it] = c * c;
            }
        return residual_pde(ras);
    };
    double r17 = residual_at(17).norm_inf;
    double r33 = residual_at(33).norm_inf;
    double r65 = residual_at(65).norm_inf;
    CHECK(r17 / r33 >= 3.5);
    CHECK(r33 / r65 >= 3.5);
}

TEST_CASE("solved-grid residual contracts under net refinement") {
    // fixed evaluation box and raster; only the net spacing changes
    NetInterpolator i65(solved(65));
    NetInterpolator i129(solved(129));
    ResidualField r65 = residual_pde(resample_to_polar(i65, 16, 16, 0.60, 0.95,
                                                       kPi / 6.0, kPi / 3.0));
    ResidualField r129 = residual_pde(resample_to_polar(i129, 16, 16, 0.60, 0.95,
                                                        kPi / 6.0, kPi / 3.0));
    CHECK(r65.norm_inf / r129.norm_inf >= 3.4);
    CHECK(r65.norm_l2 / r129.norm_l2 >= 3.4);
}

TEST_CASE("decomposition forms agree and residual contracts") {
    DecompositionReport d33 = check_decomposition(solved(33), 1e-2);
    DecompositionReport d65 = check_decomposition(solved(65), 1e-2);
    DecompositionReport d129 = check_decomposition(solved(129), 1e-2);
    CHECK(d33.form_diff_max_rel <= 1e-12);
    CHECK(d65.form_diff_max_rel <= 1e-12);
    CHECK(d33.residual.norm_l2 / d65.residual.norm_l2 >= 3.4);
    CHECK(d65.residual.norm_l2 / d129.residual.norm_l2 >= 3.4);
}

TEST_CASE("zero-length segments contribute nothing") {
    CharGrid g;
    g.n_rows = 1;
    g.n_cols = 2;
    StateNode n;
    n.r = 1.0;
    n.theta = 0.6;
    n.p = 0.5;
    n.dp_plus = 1.0;
    n.dp_minus = -1.0;
    n.status = NodeStatus::solved;
    g.nodes = {n, n};
    g.diag.resize(2);
    DecompositionReport rep = check_decomposition(g);
    REQUIRE(rep.residual.samples.size() == 1);
    CHECK(rep.residual.samples[0].value == 0.0);
    CHECK(rep.residual.norm_inf == 0.0);
}

TEST_CASE("integral identity along characteristics") {
    CharGrid g = solved(33);

    // degenerate paths: the anchor itself, both families, and the corner
    IntegralCheck lo = integral_formula_plus(g, 0, 5);
    CHECK(lo.rel_err <= 1e-12);
    double th_a = g.at(0, 5).theta;
    CHECK(rel_diff(lo.rhs, 16.0 * std::pow(std::sin(th_a), 3) * std::cos(th_a)) <= 1e-12);
    IntegralCheck up = integral_formula_minus(g, 5, 0);
    CHECK(up.rel_err <= 1e-12);
    double th_b = g.at(5, 0).theta;
    CHECK(rel_diff(up.rhs, -16.0 * std::pow(std::cos(th_b), 3) * std::sin(th_b)) <= 1e-12);
    CHECK(rel_diff(integral_formula_plus(g, 0, 0).rhs, 4.0) <= 1e-12);
    CHECK(rel_diff(integral_formula_minus(g, 0, 0).rhs, -4.0) <= 1e-12);

    // interior accuracy at a mid-depth node, improving under refinement
    CharGrid g65 = solved(65);
    auto near_r = [](const CharGrid& gr, double target) {
        std::size_t best = 1;
        double gap = 1e300;
        for (std::size_t k = 1; k < std::min(gr.n_rows, gr.n_cols); ++k) {
            if (!gr.usable(k, k)) break;
            double d = std::abs(gr.at(k, k).r - target);
            if (d < gap) {
                gap = d;
                best = k;
            }
        }
        return best;
    };
    std::size_t k33 = near_r(g, 0.9), k65 = near_r(g65, 0.9);
    IntegralCheck c33 = integral_formula_plus(g, k33, k33);
    IntegralCheck c65 = integral_formula_plus(g65, k65, k65);
    CHECK(c33.rel_err <= 1e-4);
    CHECK(c65.rel_err <= 1e-5);
    CHECK(c65.rel_err < c33.rel_err);

    // the two families are mirror images of each other
    for (std::size_t i = 1; i < 20; ++i)
        for (std::size_t j = 1; j < 20; ++j) {
            if (!g.usable(i, j) || !g.usable(j, i)) continue;
            IntegralCheck p_ = integral_formula_plus(g, i, j);
            IntegralCheck m_ = integral_formula_minus(g, j, i);
            CHECK(rel_diff(p_.rhs, -m_.rhs) <= 1e-10);
        }

    // node-addressed overload, and rejection off the grid
    IntegralCheck byn = integral_formula_plus(g, g.at(k33, k33));
    CHECK(byn.rhs == c33.rhs);
    std::size_t iv = g.n_rows - 1, jv = g.n_cols - 1;
    REQUIRE(!g.usable(iv, jv));
    CHECK_THROWS_AS(integral_formula_plus(g, iv, jv), std::invalid_argument);
}

TEST_CASE("derivative-to-pressure ratio bound") {
    CharGrid g65 = solved(65);
    CharGrid g129 = solved(129);

    SupRatio corner = sup_ratio(g65, 1.4);  // only the corner sits beyond r = 1.4
    CHECK(corner.i == 0);
    CHECK(corner.j == 0);
    CHECK(rel_diff(corner.value, 4.0) <= 1e-12);

    SupRatio s65 = sup_ratio(g65);
    SupRatio s129 = sup_ratio(g129);
    CHECK(std::isfinite(s65.value));
    CHECK(s65.value >= 4.0 - 1e-12);
    CHECK(std::abs(s129.value - s65.value) / s65.value <= 0.05);
    double dist = std::hypot(s129.r - s65.r, s129.theta - s65.theta);
    CHECK(dist <= 0.1);  // argmax stays put under refinement

    CHECK_THROWS_AS(sup_ratio(g65, 2.0), std::invalid_argument);
}

TEST_CASE("sign and monotonicity checks") {
    CharGrid g = solved(33);
    SignReport healthy = check_signs_and_monotonicity(g);
    CHECK(healthy.ok());
    CHECK(healthy.n_checked > 0);

    CharGrid bad = g;
    bad.at(3, 4).dp_plus = -bad.at(3, 4).dp_plus;
    SignReport rep = check_signs_and_monotonicity(bad);
    REQUIRE(!rep.violations.empty());
    bool named = false;
    for (const SignViolation& v : rep.violations) {
        CHECK(v.i == 3);  // the corruption is localized to the one node
        CHECK(v.j == 4);
        if (v.what == "dp_plus") named = true;
    }
    CHECK(named);

    CharGrid bad2 = g;
    bad2.at(2, 2).p = bad2.at(2, 2).r * bad2.at(2, 2).r + 0.1;  // beyond sonic
    SignReport rep2 = check_signs_and_monotonicity(bad2);
    CHECK(!rep2.ok());
    bool saw = false;
    for (const SignViolation& v : rep2.violations)
        if (v.i == 2 && v.j == 2 && v.what == "hyperbolicity") saw = true;
    CHECK(saw);

    CharGrid bad3 = g;
    bad3.at(4, 6).p = bad3.at(4, 5).p + 1e-3;  // breaks decrease along the row
    SignReport rep3 = check_signs_and_monotonicity(bad3);
    bool mono = false;
    for (const SignViolation& v : rep3.violations)
        if (v.what.find("monotonicity") == 0) mono = true;
    CHECK(mono);
}
