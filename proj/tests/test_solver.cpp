#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "pgrad/boundary.hpp"
#include "pgrad/coords.hpp"
#include "pgrad/solver.hpp"
#include "test_util.hpp"

using namespace pgrad;
using pgrad_test::rel_diff;

TEST_CASE("seed placement") {
    auto [lo, up] = seed_boundaries(2);
    REQUIRE(lo.size() == 2);
    CHECK(lo[0].theta == kPi / 4.0);
    CHECK(rel_diff(lo[1].theta, kPi / 8.0) <= 1e-15);
    CHECK(rel_diff(up[1].theta, kPi / 2.0 - kPi / 8.0) <= 1e-15);
    CHECK(up[0].theta == up[0].theta);  // corner sample present
    CHECK(rel_diff(up[0].theta, kPi / 4.0) <= 1e-15);

    // the last gap before the axis stays open regardless of clustering
    for (double ratio : {1.0, 0.5}) {
        auto [l9, u9] = seed_boundaries(9, ratio);
        CHECK(rel_diff(l9.back().theta, kPi / 36.0) <= 1e-13);
        CHECK(rel_diff(u9.back().theta, kPi / 2.0 - kPi / 36.0) <= 1e-13);
        for (std::size_t k = 1; k < l9.size(); ++k) CHECK(l9[k].theta < l9[k - 1].theta);
    }

    // geometric gaps shrink by exactly the ratio
    auto [lg, ug] = seed_boundaries(5, 0.5);
    for (std::size_t k = 0; k + 2 < lg.size(); ++k) {
        double g0 = lg[k].theta - lg[k + 1].theta;
        double g1 = lg[k + 1].theta - lg[k + 2].theta;
        CHECK(rel_diff(g1 / g0, 0.5) <= 1e-12);
    }

    CHECK_THROWS_AS(seed_boundaries(1), std::invalid_argument);
    CHECK_THROWS_AS(seed_boundaries(5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(seed_boundaries(257, 0.8), std::invalid_argument);  // offsets collapse
}

TEST_CASE("boundary nodes carry the arc data") {
    StateNode lo = boundary_node(lower_arc(kPi / 6.0));
    CHECK(lo.status == NodeStatus::boundary);
    CHECK(rel_diff(lo.r, 1.0) <= 1e-15);
    CHECK(lo.theta == kPi / 6.0);
    CHECK(rel_diff(lo.p, 0.25) <= 1e-15);
    CHECK(rel_diff(lo.dp_plus, std::sqrt(3.0)) <= 1e-15);          // tangential
    CHECK(rel_diff(lo.dp_minus, lower_arc_transverse(kPi / 6.0)) <= 1e-15);
    CHECK(lo.dp_minus < 0.0);

    StateNode up = boundary_node(upper_arc(kPi / 3.0));
    CHECK(rel_diff(up.dp_minus, -std::sqrt(3.0)) <= 1e-15);
    CHECK(rel_diff(up.dp_plus, upper_arc_transverse(kPi / 3.0)) <= 1e-15);
    CHECK(up.dp_plus > 0.0);

    // corner from either arc
    StateNode ca = boundary_node(lower_arc(kPi / 4.0));
    StateNode cb = boundary_node(upper_arc(kPi / 4.0));
    for (const StateNode& c : {ca, cb}) {
        CHECK(rel_diff(c.p, 1.0) <= 1e-15);
        CHECK(rel_diff(c.dp_plus, 4.0) <= 1e-14);
        CHECK(rel_diff(c.dp_minus, -4.0) <= 1e-14);
    }
}

TEST_CASE("node update basics") {
    SolverConfig cfg;
    StateNode a = boundary_node(upper_arc(kPi / 4.0 + 0.1));
    NodeUpdateResult same = node_update(a, a, cfg);
    CHECK(same.outcome == NodeUpdateResult::Outcome::ok);
    CHECK(same.node.r == a.r);
    CHECK(same.node.p == a.p);

    StateNode b = boundary_node(lower_arc(kPi / 4.0 - 0.1));
    NodeUpdateResult res = node_update(a, b, cfg);
    REQUIRE(res.outcome == NodeUpdateResult::Outcome::ok);
    CHECK(res.node.status == NodeStatus::solved);
    CHECK(res.node.theta > b.theta);
    CHECK(res.node.theta < a.theta);
    CHECK(res.node.r < a.r);
    CHECK(res.node.p < b.p);
    CHECK(res.node.dp_plus > 0.0);
    CHECK(res.node.dp_minus < 0.0);
    CHECK(res.iters >= 2);
    CHECK(res.p_mismatch < 1e-4);
}

// One coarse cell against a Richardson limit of sub-seeded solves of the same
// cell.  The fine target is node (m, m) of the m-fold refined Goursat patch.
TEST_CASE("first cell against refined solves") {
    const double d = kPi / 64.0;
    SolverConfig cfg;
    StateNode a = boundary_node(upper_arc(kPi / 4.0 + d));
    StateNode b = boundary_node(lower_arc(kPi / 4.0 - d));
    NodeUpdateResult coarse = node_update(a, b, cfg);
    REQUIRE(coarse.outcome == NodeUpdateResult::Outcome::ok);

    auto refined_p = [&](std::size_t m) {
        std::vector<ArcSample> lows, ups;
        for (std::size_t k = 0; k <= m; ++k) {
            double f = static_cast<double>(k) / static_cast<double>(m);
            lows.push_back(lower_arc(kPi / 4.0 - d * f));
            ups.push_back(upper_arc(kPi / 4.0 + d * f));
        }
        CharGrid g = solve_from_seeds(lows, ups, cfg);
        REQUIRE(g.usable(m, m));
        return g.at(m, m).p;
    };
    double p32 = refined_p(32), p64 = refined_p(64), p128 = refined_p(128);
    double order = std::log2(std::abs((p32 - p64) / (p64 - p128)));
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);

    double p_ref = p128 + (p128 - p64) / 3.0;
    CHECK(std::abs(p128 - p_ref) <= 1e-7);
    CHECK(std::abs(coarse.node.p - p_ref) <= 5e-4);
    CHECK(std::abs(coarse.node.theta - kPi / 4.0) <= 1e-12);  // symmetric cell
}

static StateNode mirrored(const StateNode& n) {
    StateNode out = n;
    out.theta = kPi / 2.0 - n.theta;
    out.dp_plus = -n.dp_minus;
    out.dp_minus = -n.dp_plus;
    return out;
}

TEST_CASE("node update is mirror equivariant") {
    SolverConfig cfg;
    StateNode a = boundary_node(upper_arc(kPi / 4.0 + 0.2));
    StateNode b = boundary_node(lower_arc(kPi / 4.0 - 0.1));
    NodeUpdateResult c = node_update(a, b, cfg);
    NodeUpdateResult cm = node_update(mirrored(b), mirrored(a), cfg);
    REQUIRE(c.outcome == NodeUpdateResult::Outcome::ok);
    REQUIRE(cm.outcome == NodeUpdateResult::Outcome::ok);
    CHECK(rel_diff(cm.node.r, c.node.r) <= 1e-12);
    CHECK(std::abs(cm.node.theta - (kPi / 2.0 - c.node.theta)) <= 1e-12);
    CHECK(rel_diff(cm.node.p, c.node.p) <= 1e-12);
    CHECK(rel_diff(cm.node.dp_plus, -c.node.dp_minus) <= 1e-12);
    CHECK(rel_diff(cm.node.dp_minus, -c.node.dp_plus) <= 1e-12);
}

TEST_CASE("smallest grid") {
    // one cell spanning the full arcs cannot march; it must stop, not lie
    SolverConfig cfg;
    cfg.n_seeds = 2;
    CharGrid g = solve_interior(cfg);
    REQUIRE(g.n_rows == 2);
    REQUIRE(g.n_cols == 2);
    CHECK(g.at(0, 0).status == NodeStatus::boundary);
    CHECK(g.at(0, 1).status == NodeStatus::boundary);
    CHECK(g.at(1, 0).status == NodeStatus::boundary);
    NodeUpdateResult direct = node_update(g.at(1, 0), g.at(0, 1), cfg);
    CHECK(direct.outcome == NodeUpdateResult::Outcome::vacuum_stop);
    CHECK(g.at(1, 1).status == NodeStatus::stopped_vacuum);
    CHECK(std::isnan(g.at(1, 1).p));
}

TEST_CASE("grid cell matches a direct update") {
    SolverConfig cfg;
    cfg.n_seeds = 9;
    CharGrid g = solve_interior(cfg);
    REQUIRE(g.usable(1, 1));
    NodeUpdateResult direct = node_update(g.at(1, 0), g.at(0, 1), cfg);
    CHECK(g.at(1, 1).r == direct.node.r);
    CHECK(g.at(1, 1).theta == direct.node.theta);
    CHECK(g.at(1, 1).p == direct.node.p);
    CHECK(g.at(1, 1).dp_plus == direct.node.dp_plus);
    CHECK(g.at(1, 1).dp_minus == direct.node.dp_minus);
}

TEST_CASE("solved grid structure") {
    SolverConfig cfg;
    cfg.n_seeds = 33;
    CharGrid g = solve_interior(cfg);
    REQUIRE(g.n_rows == 33);
    REQUIRE(g.n_cols == 33);

    for (std::size_t j = 0; j < g.n_cols; ++j) CHECK(g.at(0, j).status == NodeStatus::boundary);
    for (std::size_t i = 0; i < g.n_rows; ++i) CHECK(g.at(i, 0).status == NodeStatus::boundary);

    std::size_t solved = 0, stopped = 0;
    for (std::size_t i = 0; i < g.n_rows; ++i)
        for (std::size_t j = 0; j < g.n_cols; ++j) {
            NodeStatus s = g.at(i, j).status;
            CHECK(s != NodeStatus::unsolved);
            if (s == NodeStatus::solved) ++solved;
            if (s == NodeStatus::stopped_vacuum || s == NodeStatus::stopped_domain) {
                ++stopped;
                CHECK(std::isnan(g.at(i, j).p));
            }
        }
    CHECK(solved > 0);
    CHECK(stopped > 0);

    // usable nodes form a prefix along every row and column
    for (std::size_t i = 1; i < g.n_rows; ++i) {
        bool alive = true;
        for (std::size_t j = 1; j < g.n_cols; ++j) {
            if (!alive) CHECK(!g.usable(i, j));
            alive = alive && g.usable(i, j);
        }
    }
    for (std::size_t j = 1; j < g.n_cols; ++j) {
        bool alive = true;
        for (std::size_t i = 1; i < g.n_rows; ++i) {
            if (!alive) CHECK(!g.usable(i, j));
            alive = alive && g.usable(i, j);
        }
    }

    // the grid inherits the mirror symmetry of the data
    for (std::size_t k = 1; k < 33; ++k) {
        if (!g.usable(k, k)) break;
        CHECK(std::abs(g.at(k, k).theta - kPi / 4.0) <= 1e-12);
        CHECK(std::abs(g.at(k, k).dp_plus + g.at(k, k).dp_minus) <= 1e-10);
    }
}

TEST_CASE("traced characteristics") {
    SolverConfig cfg;
    cfg.n_seeds = 17;
    CharGrid g = solve_interior(cfg);

    // the plus characteristic through the corner is the lower arc itself
    std::vector<StateNode> row0 = trace_characteristic(g, 0, 0, Family::plus_family);
    REQUIRE(row0.size() == 17);
    for (std::size_t j = 0; j < row0.size(); ++j) {
        CHECK(row0[j].r == g.at(0, j).r);
        CHECK(rel_diff(row0[j].r, 2.0 * std::sin(row0[j].theta)) <= 1e-14);
        if (j > 0) CHECK(row0[j].theta < row0[j - 1].theta);
    }

    std::vector<StateNode> col0 = trace_characteristic(g, 0, 0, Family::minus_family);
    REQUIRE(col0.size() == 17);
    for (std::size_t i = 0; i < col0.size(); ++i) {
        CHECK(col0[i].r == g.at(i, 0).r);
        if (i > 0) CHECK(col0[i].theta > col0[i - 1].theta);
    }

    // a minus characteristic from a lower-arc seed walks its column, anchor first
    std::vector<StateNode> col5 = trace_characteristic(g, 3, 5, Family::minus_family);
    CHECK(col5[0].theta == g.at(0, 5).theta);
    std::size_t expect = 0;
    while (expect < g.n_rows && g.usable(expect, 5)) ++expect;
    CHECK(col5.size() == expect);
    for (std::size_t i = 0; i < col5.size(); ++i) CHECK(col5[i].p == g.at(i, 5).p);

    // node-addressed overload resolves to the same line
    std::vector<StateNode> byn = trace_characteristic(g, g.at(3, 5), Family::minus_family);
    REQUIRE(byn.size() == col5.size());
    for (std::size_t i = 0; i < byn.size(); ++i) CHECK(byn[i].r == col5[i].r);

    StateNode fake = g.at(3, 5);
    fake.r += 1e-6;
    CHECK_THROWS_AS(trace_characteristic(g, fake, Family::minus_family), std::invalid_argument);
    CHECK_THROWS_AS(trace_characteristic(g, 40, 0, Family::plus_family), std::out_of_range);
}

// Secant slopes along a traced line against the analytic direction field at
// segment midpoints, away from the stop frontier.
static double worst_slope_gap(const CharGrid& g) {
    std::vector<StateNode> line =
        trace_characteristic(g, (g.n_rows - 1) / 8, 0, Family::plus_family);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
        const StateNode& a = line[k];
        const StateNode& b = line[k + 1];
        if (a.p < 1e-2 || b.p < 1e-2) continue;
        Coefficients c = coefficients(0.5 * (a.r + b.r), 0.5 * (a.p + b.p));
        worst = std::max(worst, std::abs((b.r - a.r) / (b.theta - a.theta) - 1.0 / c.lambda));
    }
    return worst;
}

TEST_CASE("traced lines follow the direction field") {
    SolverConfig c65, c129;
    c65.n_seeds = 65;
    c129.n_seeds = 129;
    double w65 = worst_slope_gap(solve_interior(c65));
    double w129 = worst_slope_gap(solve_interior(c129));
    CHECK(w65 <= 1e-2);
    double ratio = w65 / w129;
    CHECK(ratio >= 2.5);
    CHECK(ratio <= 6.0);
}

TEST_CASE("solve_from_seeds preconditions") {
    SolverConfig cfg;
    std::vector<ArcSample> lows = {lower_arc(kPi / 4.0), lower_arc(0.7)};
    std::vector<ArcSample> ups = {upper_arc(0.9), upper_arc(1.0)};  // no shared corner
    CHECK_THROWS_AS(solve_from_seeds(lows, ups, cfg), std::invalid_argument);
    std::vector<ArcSample> one = {lower_arc(kPi / 4.0)};
    CHECK_THROWS_AS(solve_from_seeds(one, ups, cfg), std::invalid_argument);
}

TEST_CASE("corrector failure carries its location") {
    SolverConfig cfg;
    cfg.n_seeds = 17;
    cfg.corrector_tol = 1e-30;
    cfg.max_corrector_iters = 2;
    try {
        solve_interior(cfg);
        FAIL("expected a convergence failure");
    } catch (const SolveError& e) {
        CHECK(e.i >= 1);
        CHECK(e.j >= 1);
        CHECK(e.i < 17);
        CHECK(e.j < 17);
        CHECK(std::isfinite(e.mismatch));
    }
}

TEST_CASE("rescaling is exact for p1 = 4") {
    SolverConfig cfg;
    cfg.n_seeds = 9;
    CharGrid g = solve_interior(cfg);
    CharGrid s = rescaled(g, 4.0);
    REQUIRE(s.n_rows == g.n_rows);
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        const StateNode& a = g.nodes[k];
        const StateNode& b = s.nodes[k];
        CHECK(b.status == a.status);
        if (std::isnan(a.p)) {
            CHECK(std::isnan(b.p));
            continue;
        }
        CHECK(b.theta == a.theta);
        CHECK(b.r == 2.0 * a.r);
        CHECK(b.p == 4.0 * a.p);
        CHECK(b.dp_plus == 4.0 * a.dp_plus);
        CHECK(b.dp_minus == 4.0 * a.dp_minus);
    }
    for (std::size_t k = 0; k < g.seeds_lower.size(); ++k) {
        CHECK(s.seeds_lower[k].r == 2.0 * g.seeds_lower[k].r);
        CHECK(s.seeds_lower[k].p == 4.0 * g.seeds_lower[k].p);
    }

    CharGrid back = rescaled(s, 0.25);
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        if (std::isnan(g.nodes[k].p)) continue;
        CHECK(back.nodes[k].r == g.nodes[k].r);
        CHECK(back.nodes[k].p == g.nodes[k].p);
        CHECK(back.nodes[k].dp_plus == g.nodes[k].dp_plus);
    }

    CHECK_THROWS_AS(rescaled(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rescaled(g, -1.0), std::invalid_argument);
}
