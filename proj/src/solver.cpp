#include "pgrad/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pgrad/threads.hpp"

namespace pgrad {

const char* status_name(NodeStatus s) {
    switch (s) {
        case NodeStatus::boundary: return "boundary";
        case NodeStatus::solved: return "solved";
        case NodeStatus::stopped_vacuum: return "stopped_vacuum";
        case NodeStatus::stopped_domain: return "stopped_domain";
        default: return "unsolved";
    }
}

NodeStatus status_from_name(const std::string& s) {
    if (s == "boundary") return NodeStatus::boundary;
    if (s == "solved") return NodeStatus::solved;
    if (s == "stopped_vacuum") return NodeStatus::stopped_vacuum;
    if (s == "stopped_domain") return NodeStatus::stopped_domain;
    if (s == "unsolved") return NodeStatus::unsolved;
    throw std::invalid_argument("unknown node status: " + s);
}

double p_radial(const StateNode& n) {
    return lambda(n.r, n.p) * (n.dp_plus - n.dp_minus) / 2.0;
}

SolveError::SolveError(std::size_t i_, std::size_t j_, double mismatch_)
    : std::runtime_error("corrector failed to converge at node (" + std::to_string(i_) +
                         ", " + std::to_string(j_) + "), p mismatch " +
                         std::to_string(mismatch_)),
      i(i_), j(j_), mismatch(mismatch_) {}

namespace {

// One characteristic leg as a line a*theta + b*r = c.  theta_form fixes the
// slope dr/dtheta = +-1/lambda, r_form fixes dtheta/dr = +-lambda; the two
// meet in a 2x2 solve whose determinant never vanishes for lambda > 0.
struct LegLine {
    double a, b, c;
};

LegLine leg_line(double lam, double theta0, double r0, bool plus_fam, bool theta_form) {
    if (theta_form) {
        double s = plus_fam ? 1.0 / lam : -1.0 / lam;
        return {-s, 1.0, r0 - s * theta0};
    }
    double s = plus_fam ? lam : -lam;
    return {1.0, -s, theta0 - s * r0};
}

// Trapezoidal transport pair for one cell,
//   v = av + bvq * v * (u - v),   u = au + buq * u * (v - u),
// solved by damped Newton.  Direct substitution sweeps violate the
// contraction bound near the arc axis ends, where q grows like theta^-4
// while the derivative data shrinks like theta^3.
bool solve_transport(double& u, double& v, double au, double av, double buq, double bvq) {
    double uu = u, vv = v;
    double scale = std::max({1e-30, std::abs(au), std::abs(av), std::abs(uu), std::abs(vv)});
    double tol = 1e-14 * scale;
    double f1 = vv - av - bvq * vv * (uu - vv);
    double f2 = uu - au - buq * uu * (vv - uu);
    double fn = std::max(std::abs(f1), std::abs(f2));
    for (int it = 0; it < 30; ++it) {
        if (fn <= tol) {
            u = uu;
            v = vv;
            return true;
        }
        double j11 = -bvq * vv;
        double j12 = 1.0 - bvq * (uu - 2.0 * vv);
        double j21 = 1.0 - buq * (vv - 2.0 * uu);
        double j22 = -buq * uu;
        double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) return false;
        double du = (-j22 * f1 + j12 * f2) / det;
        double dv = (j21 * f1 - j11 * f2) / det;
        double step = 1.0;
        bool accepted = false;
        for (int half = 0; half < 6; ++half) {
            double ut = uu + step * du, vt = vv + step * dv;
            double g1 = vt - av - bvq * vt * (ut - vt);
            double g2 = ut - au - buq * ut * (vt - ut);
            double gn = std::max(std::abs(g1), std::abs(g2));
            if (gn < fn || gn <= tol) {
                uu = ut;
                vv = vt;
                f1 = g1;
                f2 = g2;
                fn = gn;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return false;
    }
    if (fn <= tol) {
        u = uu;
        v = vv;
        return true;
    }
    return false;
}

}  // namespace

NodeUpdateResult node_update(const StateNode& A, const StateNode& B,
                             const SolverConfig& cfg) {
    using Outcome = NodeUpdateResult::Outcome;
    NodeUpdateResult res;
    if (A.theta == B.theta && A.r == B.r) {
        res.node = A;  // zero-length cell
        return res;
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    double theta_c = nan, r_c = nan, p_c = nan;
    double u_c = B.dp_plus;   // dp_plus guess, evolved from the minus-side predecessor
    double v_c = A.dp_minus;  // dp_minus guess, evolved from the plus-side predecessor
    double lam_c = 0.0, q_c = 0.0;
    double p_prev = nan;
    const double th_lo = std::min(A.theta, B.theta);
    const double th_hi = std::max(A.theta, B.theta);

    try {
        const Coefficients cA = coefficients(A.r, A.p);
        const Coefficients cB = coefficients(B.r, B.p);
        const double GA = cA.q * A.dp_minus * (A.dp_plus - A.dp_minus);
        const double HB = cB.q * B.dp_plus * (B.dp_minus - B.dp_plus);

        for (int sweep = 1; sweep <= cfg.max_corrector_iters; ++sweep) {
            bool euler = sweep == 1;
            double lam_plus = euler ? cA.lambda : 0.5 * (cA.lambda + lam_c);
            double lam_minus = euler ? cB.lambda : 0.5 * (cB.lambda + lam_c);
            bool th_form_plus = lam_plus >= cfg.param_switch_lambda;
            bool th_form_minus = lam_minus >= cfg.param_switch_lambda;

            LegLine L1 = leg_line(lam_plus, A.theta, A.r, true, th_form_plus);
            LegLine L2 = leg_line(lam_minus, B.theta, B.r, false, th_form_minus);
            double det = L1.a * L2.b - L2.a * L1.b;
            theta_c = (L1.c * L2.b - L2.c * L1.b) / det;
            r_c = (L1.a * L2.c - L2.a * L1.c) / det;

            // p along each leg; dp/dtheta = dp_pm, dp/dr = +-lambda dp_pm
            double p_plus, p_minus;
            if (euler) {
                p_plus = th_form_plus ? A.p + (theta_c - A.theta) * A.dp_plus
                                      : A.p + (r_c - A.r) * cA.lambda * A.dp_plus;
                p_minus = th_form_minus ? B.p + (theta_c - B.theta) * B.dp_minus
                                        : B.p - (r_c - B.r) * cB.lambda * B.dp_minus;
            } else {
                p_plus = th_form_plus
                             ? A.p + (theta_c - A.theta) * 0.5 * (A.dp_plus + u_c)
                             : A.p + (r_c - A.r) * 0.5 * (cA.lambda * A.dp_plus + lam_c * u_c);
                p_minus = th_form_minus
                              ? B.p + (theta_c - B.theta) * 0.5 * (B.dp_minus + v_c)
                              : B.p - (r_c - B.r) * 0.5 * (cB.lambda * B.dp_minus + lam_c * v_c);
            }
            p_c = 0.5 * (p_plus + p_minus);
            res.iters = sweep;
            res.p_mismatch = std::abs(p_plus - p_minus);

            if (p_c < cfg.p_floor) {
                res.outcome = Outcome::vacuum_stop;
                break;
            }
            if (r_c * r_c - p_c <= cfg.sonic_margin) {
                res.outcome = Outcome::sonic_stop;
                break;
            }
            if (!(theta_c > th_lo && theta_c < th_hi && theta_c > 0.0 &&
                  theta_c < kPi / 2.0 && r_c > 0.0)) {
                res.outcome = Outcome::domain_stop;
                break;
            }

            Coefficients cC = coefficients(r_c, p_c);
            lam_c = cC.lambda;
            q_c = cC.q;

            if (euler) {
                double v_new = th_form_plus ? A.dp_minus + (theta_c - A.theta) * GA
                                            : A.dp_minus + (r_c - A.r) * cA.lambda * GA;
                double u_new = th_form_minus ? B.dp_plus + (theta_c - B.theta) * HB
                                             : B.dp_plus - (r_c - B.r) * cB.lambda * HB;
                v_c = v_new;
                u_c = u_new;
            } else {
                double alpha_v = th_form_plus
                                     ? A.dp_minus + (theta_c - A.theta) * 0.5 * GA
                                     : A.dp_minus + (r_c - A.r) * 0.5 * cA.lambda * GA;
                double beta_v =
                    th_form_plus ? 0.5 * (theta_c - A.theta) : 0.5 * (r_c - A.r) * lam_c;
                double alpha_u = th_form_minus
                                     ? B.dp_plus + (theta_c - B.theta) * 0.5 * HB
                                     : B.dp_plus - (r_c - B.r) * 0.5 * cB.lambda * HB;
                double beta_u =
                    th_form_minus ? 0.5 * (theta_c - B.theta) : -0.5 * (r_c - B.r) * lam_c;
                if (!solve_transport(u_c, v_c, alpha_u, alpha_v, beta_u * q_c, beta_v * q_c)) {
                    // substitution step instead; the outer guards classify what follows
                    double Gc = q_c * v_c * (u_c - v_c);
                    double Hc = q_c * u_c * (v_c - u_c);
                    double v_new = alpha_v + beta_v * Gc;
                    double u_new = alpha_u + beta_u * Hc;
                    v_c = v_new;
                    u_c = u_new;
                }
            }

            if (!euler && std::abs(p_c - p_prev) <= cfg.corrector_tol) {
                res.node = {r_c, theta_c, p_c, u_c, v_c, NodeStatus::solved};
                return res;
            }
            p_prev = p_c;
        }
    } catch (const DegeneracyError& e) {
        res.outcome = e.bound == DegeneracyError::Bound::vacuum ? Outcome::vacuum_stop
                                                                : Outcome::sonic_stop;
    }

    if (res.outcome == Outcome::ok) res.outcome = Outcome::no_convergence;
    res.node = {r_c, theta_c, p_c, u_c, v_c, NodeStatus::unsolved};
    return res;
}

std::pair<std::vector<ArcSample>, std::vector<ArcSample>>
seed_boundaries(std::size_t n_seeds, double cluster_ratio) {
    if (n_seeds < 2)
        throw std::invalid_argument("seed_boundaries: n_seeds must be at least 2");
    if (!(cluster_ratio > 0.0))
        throw std::invalid_argument("seed_boundaries: cluster_ratio must be positive");

    // Offsets from pi/4 end one uniform gap short of the axis.
    double span = kPi / 4.0 - kPi / (4.0 * static_cast<double>(n_seeds));
    std::vector<double> offsets(n_seeds, 0.0);
    if (cluster_ratio == 1.0) {
        for (std::size_t k = 1; k < n_seeds; ++k)
            offsets[k] = span * static_cast<double>(k) / static_cast<double>(n_seeds - 1);
    } else {
        // gap k proportional to cluster_ratio^k; < 1 packs seeds toward the axis
        double denom = 1.0 - std::pow(cluster_ratio, static_cast<double>(n_seeds - 1));
        for (std::size_t k = 1; k < n_seeds; ++k)
            offsets[k] = span * (1.0 - std::pow(cluster_ratio, static_cast<double>(k))) / denom;
    }

    // aggressive clustering can collapse neighboring offsets to the same double
    for (std::size_t k = 1; k < n_seeds; ++k)
        if (!(offsets[k] > offsets[k - 1]))
            throw std::invalid_argument(
                "seed_boundaries: cluster_ratio too aggressive for n_seeds, seeds collapse");

    std::vector<ArcSample> lower, upper;
    lower.reserve(n_seeds);
    upper.reserve(n_seeds);
    for (std::size_t k = 0; k < n_seeds; ++k) {
        lower.push_back(lower_arc(kPi / 4.0 - offsets[k]));
        upper.push_back(upper_arc(kPi / 4.0 + offsets[k]));
    }
    return {std::move(lower), std::move(upper)};
}

StateNode boundary_node(const ArcSample& s) {
    StateNode n;
    n.r = s.r;
    n.theta = s.theta;
    n.p = s.p;
    n.status = NodeStatus::boundary;
    if (s.which == ArcSample::Which::lower) {
        n.dp_plus = s.tangential_dp;
        n.dp_minus = lower_arc_transverse(s.theta);
    } else {
        n.dp_minus = s.tangential_dp;
        n.dp_plus = upper_arc_transverse(s.theta);
    }
    return n;
}

CharGrid solve_from_seeds(const std::vector<ArcSample>& lower,
                          const std::vector<ArcSample>& upper,
                          const SolverConfig& cfg) {
    using Outcome = NodeUpdateResult::Outcome;
    if (lower.size() < 2 || upper.size() < 2)
        throw std::invalid_argument("solve_from_seeds: need at least two seeds per arc");
    if (lower[0].theta != upper[0].theta || std::abs(lower[0].r - upper[0].r) > 1e-9)
        throw std::invalid_argument("solve_from_seeds: seed polylines must share their first sample");

    CharGrid g;
    g.n_rows = upper.size();
    g.n_cols = lower.size();
    g.nodes.assign(g.n_rows * g.n_cols, StateNode{});
    g.diag.assign(g.n_rows * g.n_cols, NodeDiag{});
    g.seeds_lower = lower;
    g.seeds_upper = upper;
    g.config = cfg;

    for (std::size_t j = 0; j < g.n_cols; ++j) g.at(0, j) = boundary_node(lower[j]);
    for (std::size_t i = 1; i < g.n_rows; ++i) g.at(i, 0) = boundary_node(upper[i]);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t d = 2; d <= g.n_rows - 1 + g.n_cols - 1; ++d) {
        std::size_t i_lo = d >= g.n_cols ? d - (g.n_cols - 1) : 1;
        std::size_t i_hi = std::min(d - 1, g.n_rows - 1);
        if (i_lo > i_hi) continue;
        std::vector<char> failed(i_hi - i_lo + 1, 0);
        parallel_for(i_lo, i_hi + 1, [&](std::size_t i) {
            std::size_t j = d - i;
            const StateNode& A = g.at(i, j - 1);
            const StateNode& B = g.at(i - 1, j);
            StateNode& C = g.at(i, j);
            if (!g.usable(i, j - 1) || !g.usable(i - 1, j)) {
                NodeStatus s = (A.status == NodeStatus::stopped_vacuum ||
                                B.status == NodeStatus::stopped_vacuum)
                                   ? NodeStatus::stopped_vacuum
                                   : NodeStatus::stopped_domain;
                C = {nan, nan, nan, nan, nan, s};
                return;
            }
            NodeUpdateResult res = node_update(A, B, cfg);
            g.diag_at(i, j) = {res.iters, res.p_mismatch};
            switch (res.outcome) {
                case Outcome::ok:
                    C = res.node;
                    break;
                case Outcome::vacuum_stop:
                    C = {nan, nan, nan, nan, nan, NodeStatus::stopped_vacuum};
                    break;
                case Outcome::sonic_stop:
                case Outcome::domain_stop:
                    C = {nan, nan, nan, nan, nan, NodeStatus::stopped_domain};
                    break;
                case Outcome::no_convergence:
                    failed[i - i_lo] = 1;
                    break;
            }
        });
        for (std::size_t k = 0; k < failed.size(); ++k)
            if (failed[k]) {
                std::size_t i = i_lo + k;
                throw SolveError(i, d - i, g.diag_at(i, d - i).p_mismatch);
            }
    }

    for (std::size_t i = 1; i < g.n_rows; ++i)
        for (std::size_t j = 1; j < g.n_cols; ++j)
            if (g.at(i, j).status == NodeStatus::solved) {
                const NodeDiag& dg = g.diag_at(i, j);
                g.max_corrector_iters_used = std::max(g.max_corrector_iters_used, dg.iters);
                g.max_p_mismatch = std::max(g.max_p_mismatch, dg.p_mismatch);
            }
    return g;
}

CharGrid solve_interior(const SolverConfig& cfg) {
    auto seeds = seed_boundaries(cfg.n_seeds, cfg.cluster_ratio);
    return solve_from_seeds(seeds.first, seeds.second, cfg);
}

std::vector<StateNode> trace_characteristic(const CharGrid& grid, std::size_t i,
                                            std::size_t j, Family family) {
    if (i >= grid.n_rows || j >= grid.n_cols)
        throw std::out_of_range("trace_characteristic: node index outside grid");
    std::vector<StateNode> line;
    if (family == Family::plus_family) {
        for (std::size_t k = 0; k < grid.n_cols && grid.usable(i, k); ++k)
            line.push_back(grid.at(i, k));
    } else {
        for (std::size_t k = 0; k < grid.n_rows && grid.usable(k, j); ++k)
            line.push_back(grid.at(k, j));
    }
    return line;
}

std::vector<StateNode> trace_characteristic(const CharGrid& grid, const StateNode& start,
                                            Family family) {
    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j < grid.n_cols; ++j) {
            const StateNode& n = grid.at(i, j);
            if (n.theta == start.theta && n.r == start.r)
                return trace_characteristic(grid, i, j, family);
        }
    throw std::invalid_argument("trace_characteristic: start node is not on the grid");
}

CharGrid rescaled(const CharGrid& grid, double p1) {
    if (!(p1 > 0.0)) throw std::invalid_argument("rescaled: p1 must be positive");
    CharGrid out = grid;
    double s = std::sqrt(p1);
    for (auto& n : out.nodes) {
        n.r *= s;
        n.p *= p1;
        n.dp_plus *= p1;
        n.dp_minus *= p1;
    }
    for (auto& a : out.seeds_lower) {
        a.r *= s;
        a.p *= p1;
        a.tangential_dp *= p1;
    }
    for (auto& a : out.seeds_upper) {
        a.r *= s;
        a.p *= p1;
        a.tangential_dp *= p1;
    }
    for (auto& dg : out.diag) dg.p_mismatch *= p1;
    out.max_p_mismatch *= p1;
    return out;
}

}  // namespace pgrad
