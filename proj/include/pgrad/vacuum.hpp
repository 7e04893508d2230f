#pragma once

#include <cstddef>
#include <vector>

#include "pgrad/interp.hpp"
#include "pgrad/solver.hpp"

namespace pgrad {

struct LevelPoint {
    double theta, r;
};

struct LevelCurve {
    double epsilon = 0.0;
    std::vector<LevelPoint> points;  // covered rays only, theta ascending
    double theta_lo = 0.0, theta_hi = 0.0;  // coverage actually reached
    std::size_t n_rays = 0;
};

// Radius of the p = epsilon locus on each sampled ray, by monotone bisection
// of the interpolated field (single-valued since p grows with r).
LevelCurve level_curve(const CharGrid& grid, double epsilon, std::size_t n_rays = 181);
LevelCurve level_curve(const NetInterpolator& interp, double epsilon, std::size_t n_rays = 181);

struct DecayFit {
    double c = 0.0;
    double m0 = 0.0;
    double r_min = 0.0, r_max = 0.0;  // fit window actually used
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

// Least squares of ln p against 1/r on a ray, sampled uniformly in 1/r over
// [r_lo, r_hi]; samples with p <= min_p are dropped.  Throws when fewer than
// 8 samples survive.
DecayFit decay_fit(const NetInterpolator& interp, double theta, double r_lo, double r_hi,
                   double min_p, std::size_t n_samples = 96);
// min_p defaults to 10 * grid.config.p_floor
DecayFit decay_fit(const CharGrid& grid, double theta, double r_lo, double r_hi,
                   std::size_t n_samples = 96);

struct MinPressure {
    double value = 0.0;
    std::size_t i = 0, j = 0;
    double r = 0.0, theta = 0.0;
};

MinPressure min_pressure(const CharGrid& grid);

struct BubbleRow {
    double epsilon = 0.0;
    double sup_r = 0.0;
    bool covered = false;
};

struct BubbleReport {
    std::vector<BubbleRow> rows;
    double c = 0.0, m0 = 0.0;      // fit of 1/sup_r against -ln(epsilon)
    double max_rel_err = 0.0;      // per-point model error over covered rows
    bool consistent = false;       // every covered row within 10%
    double delta = 0.0;            // theta margin kept away from the axes
    std::size_t n_fit = 0;
};

// sup over theta in [delta, pi/2 - delta] of the epsilon level radius, per
// epsilon (descending), checked against the shrinkage model r = m0/ln(c/eps).
BubbleReport bubble_report(const CharGrid& grid, const std::vector<double>& epsilons,
                           double delta = kPi / 36.0);
BubbleReport bubble_report(const NetInterpolator& interp, const std::vector<double>& epsilons,
                           double delta = kPi / 36.0);

}  // namespace pgrad
