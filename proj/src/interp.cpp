#include "pgrad/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pgrad {

NetInterpolator::NetInterpolator(const CharGrid& grid) {
    std::vector<std::int64_t> vid(grid.n_rows * grid.n_cols, -1);
    auto vertex = [&](std::size_t i, std::size_t j) -> std::uint32_t {
        std::int64_t& id = vid[i * grid.n_cols + j];
        if (id < 0) {
            const StateNode& n = grid.at(i, j);
            id = static_cast<std::int64_t>(verts_.size());
            verts_.push_back({n.r * std::cos(n.theta), n.r * std::sin(n.theta), n.p});
            if (verts_.size() == 1) {
                r_min_ = r_max_ = n.r;
                th_min_ = th_max_ = n.theta;
                p_min_ = p_max_ = n.p;
            } else {
                r_min_ = std::min(r_min_, n.r);
                r_max_ = std::max(r_max_, n.r);
                th_min_ = std::min(th_min_, n.theta);
                th_max_ = std::max(th_max_, n.theta);
                p_min_ = std::min(p_min_, n.p);
                p_max_ = std::max(p_max_, n.p);
            }
        }
        return static_cast<std::uint32_t>(id);
    };

    for (std::size_t i = 0; i + 1 < grid.n_rows; ++i)
        for (std::size_t j = 0; j + 1 < grid.n_cols; ++j) {
            if (!grid.usable(i, j) || !grid.usable(i + 1, j) || !grid.usable(i, j + 1) ||
                !grid.usable(i + 1, j + 1))
                continue;
            double p00 = grid.at(i, j).p, p10 = grid.at(i + 1, j).p;
            double p01 = grid.at(i, j + 1).p, p11 = grid.at(i + 1, j + 1).p;
            std::uint32_t v00 = vertex(i, j), v10 = vertex(i + 1, j);
            std::uint32_t v01 = vertex(i, j + 1), v11 = vertex(i + 1, j + 1);
            double pmin = std::min(std::min(p00, p11), std::min(p10, p01));
            if (pmin == p00 || pmin == p11) {
                tris_.insert(tris_.end(), {v00, v10, v11});
                tris_.insert(tris_.end(), {v00, v11, v01});
            } else {
                tris_.insert(tris_.end(), {v10, v11, v01});
                tris_.insert(tris_.end(), {v10, v01, v00});
            }
        }
    if (tris_.empty()) return;

    double x1 = verts_[0].x, y1 = verts_[0].y;
    x0_ = x1;
    y0_ = y1;
    for (const Vertex& v : verts_) {
        x0_ = std::min(x0_, v.x);
        y0_ = std::min(y0_, v.y);
        x1 = std::max(x1, v.x);
        y1 = std::max(y1, v.y);
    }
    std::size_t side = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_triangles()))) + 1;
    nbx_ = nby_ = std::max<std::size_t>(1, side);
    bw_ = std::max((x1 - x0_) / static_cast<double>(nbx_), 1e-300);
    bh_ = std::max((y1 - y0_) / static_cast<double>(nby_), 1e-300);
    bins_.assign(nbx_ * nby_, {});

    auto clampi = [](long v, long hi) { return std::min(std::max(v, 0L), hi); };
    for (std::uint32_t t = 0; t < n_triangles(); ++t) {
        const Vertex& a = verts_[tris_[3 * t]];
        const Vertex& b = verts_[tris_[3 * t + 1]];
        const Vertex& c = verts_[tris_[3 * t + 2]];
        double bx0 = std::min(a.x, std::min(b.x, c.x)), bx1 = std::max(a.x, std::max(b.x, c.x));
        double by0 = std::min(a.y, std::min(b.y, c.y)), by1 = std::max(a.y, std::max(b.y, c.y));
        long ix0 = clampi(static_cast<long>((bx0 - x0_) / bw_), static_cast<long>(nbx_) - 1);
        long ix1 = clampi(static_cast<long>((bx1 - x0_) / bw_), static_cast<long>(nbx_) - 1);
        long iy0 = clampi(static_cast<long>((by0 - y0_) / bh_), static_cast<long>(nby_) - 1);
        long iy1 = clampi(static_cast<long>((by1 - y0_) / bh_), static_cast<long>(nby_) - 1);
        for (long iy = iy0; iy <= iy1; ++iy)
            for (long ix = ix0; ix <= ix1; ++ix)
                bins_[static_cast<std::size_t>(iy) * nbx_ + static_cast<std::size_t>(ix)]
                    .push_back(t);
    }
}

std::size_t NetInterpolator::bin_of(double x, double y) const {
    long ix = static_cast<long>((x - x0_) / bw_);
    long iy = static_cast<long>((y - y0_) / bh_);
    ix = std::min(std::max(ix, 0L), static_cast<long>(nbx_) - 1);
    iy = std::min(std::max(iy, 0L), static_cast<long>(nby_) - 1);
    return static_cast<std::size_t>(iy) * nbx_ + static_cast<std::size_t>(ix);
}

std::optional<double> NetInterpolator::query(double x, double y) const {
    if (tris_.empty() || !std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
    const double w_tol = -1e-9;
    for (std::uint32_t t : bins_[bin_of(x, y)]) {
        const Vertex& v1 = verts_[tris_[3 * t]];
        const Vertex& v2 = verts_[tris_[3 * t + 1]];
        const Vertex& v3 = verts_[tris_[3 * t + 2]];
        if (x == v1.x && y == v1.y) return v1.p;
        if (x == v2.x && y == v2.y) return v2.p;
        if (x == v3.x && y == v3.y) return v3.p;

        // products kept in separate statements so each rounds on its own
        double d1 = (v2.y - v3.y) * (v1.x - v3.x);
        double d2 = (v3.x - v2.x) * (v1.y - v3.y);
        double den = d1 + d2;
        if (den == 0.0) continue;
        double n1a = (v2.y - v3.y) * (x - v3.x);
        double n1b = (v3.x - v2.x) * (y - v3.y);
        double w1 = (n1a + n1b) / den;
        double n2a = (v3.y - v1.y) * (x - v3.x);
        double n2b = (v1.x - v3.x) * (y - v3.y);
        double w2 = (n2a + n2b) / den;
        double w3 = 1.0 - w1 - w2;
        if (w1 < w_tol || w2 < w_tol || w3 < w_tol) continue;
        w1 = std::max(w1, 0.0);
        w2 = std::max(w2, 0.0);
        w3 = std::max(w3, 0.0);
        double s = w1 + w2 + w3;
        return (w1 * v1.p + w2 * v2.p + w3 * v3.p) / s;
    }
    return std::nullopt;
}

std::optional<double> NetInterpolator::query_polar(double r, double theta) const {
    return query(r * std::cos(theta), r * std::sin(theta));
}

}  // namespace pgrad
