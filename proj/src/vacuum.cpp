#include "pgrad/vacuum.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "pgrad/threads.hpp"

namespace pgrad {

namespace {

constexpr std::size_t kLadder = 1024;  // radial pre-scan per ray
constexpr int kBisect = 60;

// One ray: bracket the p = eps crossing on the ladder, then bisect.  p grows
// with r, so the bracket is unique; undefined mid-queries count as the vacuum
// side.
std::optional<double> ray_level(const NetInterpolator& interp, double theta, double eps) {
    double r0 = interp.r_min(), r1 = interp.r_max();
    if (!(r1 > r0)) return std::nullopt;
    double step = (r1 - r0) / static_cast<double>(kLadder);
    bool have_prev = false;
    double pr = 0.0, pv = 0.0;
    for (std::size_t k = 0; k <= kLadder; ++k) {
        double r = r0 + step * static_cast<double>(k);
        auto v = interp.query_polar(r, theta);
        if (!v) {
            have_prev = false;
            continue;
        }
        if (have_prev && pv <= eps && *v >= eps) {
            double a = pr, b = r;
            for (int it = 0; it < kBisect; ++it) {
                double mid = 0.5 * (a + b);
                auto pm = interp.query_polar(mid, theta);
                if (pm && *pm > eps)
                    b = mid;
                else
                    a = mid;
            }
            return 0.5 * (a + b);
        }
        have_prev = true;
        pr = r;
        pv = *v;
    }
    return std::nullopt;
}

LevelCurve level_on_rays(const NetInterpolator& interp, double eps, double th_lo,
                         double th_hi, std::size_t n_rays) {
    LevelCurve out;
    out.epsilon = eps;
    out.n_rays = n_rays;
    if (interp.empty() || n_rays == 0 || !(th_hi >= th_lo)) return out;
    std::vector<std::optional<double>> hits(n_rays);
    double dth = n_rays > 1 ? (th_hi - th_lo) / static_cast<double>(n_rays - 1) : 0.0;
    parallel_for(0, n_rays, [&](std::size_t k) {
        hits[k] = ray_level(interp, th_lo + dth * static_cast<double>(k), eps);
    });
    bool first = true;
    for (std::size_t k = 0; k < n_rays; ++k) {
        if (!hits[k]) continue;
        double th = th_lo + dth * static_cast<double>(k);
        out.points.push_back({th, *hits[k]});
        if (first) {
            out.theta_lo = out.theta_hi = th;
            first = false;
        } else {
            out.theta_hi = th;
        }
    }
    return out;
}

}  // namespace

LevelCurve level_curve(const NetInterpolator& interp, double epsilon, std::size_t n_rays) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("level_curve: epsilon must lie in (0, 1)");
    return level_on_rays(interp, epsilon, interp.theta_min(), interp.theta_max(), n_rays);
}

LevelCurve level_curve(const CharGrid& grid, double epsilon, std::size_t n_rays) {
    NetInterpolator interp(grid);
    return level_curve(interp, epsilon, n_rays);
}

DecayFit decay_fit(const NetInterpolator& interp, double theta, double r_lo, double r_hi,
                   double min_p, std::size_t n_samples) {
    if (!(r_lo > 0.0) || !(r_hi > r_lo))
        throw std::invalid_argument("decay_fit: need 0 < r_lo < r_hi");
    if (n_samples < 8) throw std::invalid_argument("decay_fit: need at least 8 samples");

    std::vector<double> xs, ys, rs;
    double s_lo = 1.0 / r_hi, s_hi = 1.0 / r_lo;
    for (std::size_t k = 0; k < n_samples; ++k) {
        double s = s_lo + (s_hi - s_lo) * static_cast<double>(k) /
                              static_cast<double>(n_samples - 1);
        double r = 1.0 / s;
        auto v = interp.query_polar(r, theta);
        if (!v || !(*v > min_p)) continue;
        xs.push_back(s);
        ys.push_back(std::log(*v));
        rs.push_back(r);
    }
    if (xs.size() < 8)
        throw std::invalid_argument("decay_fit: fewer than 8 usable samples on the ray");

    double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double dx = xs[k] - mx, dy = ys[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    double slope = sxy / sxx;
    double intercept = my - slope * mx;

    DecayFit fit;
    fit.c = std::exp(intercept);
    fit.m0 = -slope;
    fit.n_points = xs.size();
    fit.r_min = *std::min_element(rs.begin(), rs.end());
    fit.r_max = *std::max_element(rs.begin(), rs.end());
    if (syy > 0.0) {
        double ss_res = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            double e = ys[k] - (intercept + slope * xs[k]);
            ss_res += e * e;
        }
        fit.r_squared = 1.0 - ss_res / syy;
    } else {
        fit.r_squared = 1.0;
    }
    return fit;
}

DecayFit decay_fit(const CharGrid& grid, double theta, double r_lo, double r_hi,
                   std::size_t n_samples) {
    NetInterpolator interp(grid);
    return decay_fit(interp, theta, r_lo, r_hi, grid.config.p_floor * 10.0, n_samples);
}

MinPressure min_pressure(const CharGrid& grid) {
    MinPressure out;
    bool found = false;
    for (std::size_t i = 0; i < grid.n_rows; ++i)
        for (std::size_t j = 0; j < grid.n_cols; ++j) {
            if (!grid.usable(i, j)) continue;
            const StateNode& n = grid.at(i, j);
            if (!found || n.p < out.value) {
                out = {n.p, i, j, n.r, n.theta};
                found = true;
            }
        }
    if (!found) throw std::invalid_argument("min_pressure: grid has no usable nodes");
    return out;
}

BubbleReport bubble_report(const NetInterpolator& interp, const std::vector<double>& epsilons,
                           double delta) {
    for (std::size_t k = 0; k + 1 < epsilons.size(); ++k)
        if (!(epsilons[k] > epsilons[k + 1]))
            throw std::invalid_argument("bubble_report: epsilons must be strictly descending");
    if (!(delta > 0.0) || !(delta < kPi / 4.0))
        throw std::invalid_argument("bubble_report: delta must lie in (0, pi/4)");

    BubbleReport rep;
    rep.delta = delta;
    for (double eps : epsilons) {
        LevelCurve lc = level_on_rays(interp, eps, delta, kPi / 2.0 - delta, 181);
        BubbleRow row;
        row.epsilon = eps;
        row.covered = !lc.points.empty();
        for (const LevelPoint& pt : lc.points) row.sup_r = std::max(row.sup_r, pt.r);
        rep.rows.push_back(row);
    }

    // shrinkage model r = m0 / ln(c/eps): linear in 1/r vs -ln(eps)
    std::vector<double> xs, ys;
    for (const BubbleRow& row : rep.rows)
        if (row.covered) {
            xs.push_back(-std::log(row.epsilon));
            ys.push_back(1.0 / row.sup_r);
        }
    rep.n_fit = xs.size();
    if (xs.size() >= 2) {
        double n = static_cast<double>(xs.size());
        double mx = 0.0, my = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            mx += xs[k];
            my += ys[k];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            sxx += (xs[k] - mx) * (xs[k] - mx);
            sxy += (xs[k] - mx) * (ys[k] - my);
        }
        double beta = sxy / sxx;
        double alpha = my - beta * mx;
        if (beta > 0.0) {
            rep.m0 = 1.0 / beta;
            rep.c = std::exp(alpha / beta);
            for (std::size_t k = 0; k < xs.size(); ++k) {
                double denom = alpha + beta * xs[k];
                double model_r = denom > 0.0 ? 1.0 / denom : 0.0;
                double sup_r = 1.0 / ys[k];
                rep.max_rel_err =
                    std::max(rep.max_rel_err, std::abs(model_r - sup_r) / sup_r);
            }
            rep.consistent = rep.max_rel_err <= 0.10;
        }
    }
    return rep;
}

BubbleReport bubble_report(const CharGrid& grid, const std::vector<double>& epsilons,
                           double delta) {
    NetInterpolator interp(grid);
    return bubble_report(interp, epsilons, delta);
}

}  // namespace pgrad
