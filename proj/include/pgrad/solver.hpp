#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgrad/boundary.hpp"
#include "pgrad/coords.hpp"

namespace pgrad {

enum class NodeStatus { unsolved, boundary, solved, stopped_vacuum, stopped_domain };

const char* status_name(NodeStatus s);
NodeStatus status_from_name(const std::string& s);

struct StateNode {
    double r = 0.0;
    double theta = 0.0;
    double p = 0.0;
    double dp_plus = 0.0;   // directional derivative along the plus family, per radian
    double dp_minus = 0.0;  // along the minus family
    NodeStatus status = NodeStatus::unsolved;
};

// p_r = lambda (dp_plus - dp_minus) / 2, p_theta = (dp_plus + dp_minus) / 2
double p_radial(const StateNode& n);
inline double p_angular(const StateNode& n) { return (n.dp_plus + n.dp_minus) / 2.0; }

struct SolverConfig {
    std::size_t n_seeds = 65;
    double corrector_tol = 1e-12;      // absolute, on p per sweep
    int max_corrector_iters = 50;
    double p_floor = 1e-12;
    double sonic_margin = 1e-12;       // minimum allowed r^2 - p
    double param_switch_lambda = 0.1;  // below this, legs integrate in r instead of theta
    double cluster_ratio = 1.0;        // geometric seed-gap ratio; 1 = uniform
};

struct NodeDiag {
    int iters = 0;
    double p_mismatch = 0.0;  // |p via plus leg - p via minus leg|
};

// node (i, j) = intersection of the plus characteristic launched from upper
// seed i with the minus characteristic launched from lower seed j.  Row i=0 is
// the lower arc (the plus characteristic through the corner), column j=0 the
// upper arc, node (0,0) the corner.  Marching order is by diagonal i+j.
struct CharGrid {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<StateNode> nodes;  // row-major, i * n_cols + j
    std::vector<NodeDiag> diag;
    std::vector<ArcSample> seeds_lower;
    std::vector<ArcSample> seeds_upper;
    SolverConfig config;
    int max_corrector_iters_used = 0;
    double max_p_mismatch = 0.0;

    StateNode& at(std::size_t i, std::size_t j) { return nodes[i * n_cols + j]; }
    const StateNode& at(std::size_t i, std::size_t j) const { return nodes[i * n_cols + j]; }
    NodeDiag& diag_at(std::size_t i, std::size_t j) { return diag[i * n_cols + j]; }
    const NodeDiag& diag_at(std::size_t i, std::size_t j) const { return diag[i * n_cols + j]; }
    bool usable(std::size_t i, std::size_t j) const {
        NodeStatus s = at(i, j).status;
        return s == NodeStatus::solved || s == NodeStatus::boundary;
    }
};

struct NodeUpdateResult {
    enum class Outcome { ok, vacuum_stop, sonic_stop, domain_stop, no_convergence };
    StateNode node;
    int iters = 0;
    double p_mismatch = 0.0;
    Outcome outcome = Outcome::ok;
};

class SolveError : public std::runtime_error {
  public:
    SolveError(std::size_t i_, std::size_t j_, double mismatch_);
    std::size_t i, j;
    double mismatch;
};

// Trapezoidal predictor-corrector for one characteristic cell.  pred_plus is
// the known node on the incoming plus characteristic (the upper-arc side),
// pred_minus the known node on the incoming minus characteristic (lower-arc
// side); theta of the new node lands strictly between the two.
NodeUpdateResult node_update(const StateNode& pred_plus, const StateNode& pred_minus,
                             const SolverConfig& cfg);

// Seed theta values descend from pi/4 on the lower arc and mirror upward on
// the upper arc; the last gap before the axis stays open.  cluster_ratio < 1
// shrinks gaps geometrically toward the axis end.
std::pair<std::vector<ArcSample>, std::vector<ArcSample>>
seed_boundaries(std::size_t n_seeds, double cluster_ratio = 1.0);

// Arc sample -> full state: the tangential derivative is the arc's own
// characteristic family, the transverse one comes from the arc ODE.
StateNode boundary_node(const ArcSample& s);

// lower[0] and upper[0] must be the same point (the shared corner of the two
// seed polylines).  Marches diagonals; nodes within a diagonal run in
// parallel.  Throws SolveError on corrector non-convergence.
CharGrid solve_from_seeds(const std::vector<ArcSample>& lower,
                          const std::vector<ArcSample>& upper,
                          const SolverConfig& cfg);

CharGrid solve_interior(const SolverConfig& cfg);

// Grid line of the requested family through node (i, j), anchor first: rows
// carry the plus family (anchor = upper seed, theta descending), columns the
// minus family (anchor = lower seed, theta ascending).  Stops at the last
// usable node.
std::vector<StateNode> trace_characteristic(const CharGrid& grid, std::size_t i,
                                            std::size_t j, Family family);
std::vector<StateNode> trace_characteristic(const CharGrid& grid, const StateNode& start,
                                            Family family);

// Unit-pressure solution scaled to upstream pressure p1: r and derivatives
// pick up sqrt(p1) and p1 factors, angles are unchanged.
CharGrid rescaled(const CharGrid& grid, double p1);

}  // namespace pgrad
