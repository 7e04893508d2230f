#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pgrad/solver.hpp"

namespace pgrad {

// Piecewise-linear p over the characteristic net, evaluated in the Cartesian
// plane (x = r cos theta, y = r sin theta) where straight-sided triangles are
// a faithful mesh.  Each fully usable grid quad splits along the diagonal
// whose endpoints include the smallest p; triangles land in a uniform bin
// index for point location.
class NetInterpolator {
  public:
    explicit NetInterpolator(const CharGrid& grid);

    std::optional<double> query(double x, double y) const;
    std::optional<double> query_polar(double r, double theta) const;

    bool empty() const { return tris_.empty(); }
    std::size_t n_triangles() const { return tris_.size() / 3; }

    // polar bounding box of the triangulated vertices
    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    double theta_min() const { return th_min_; }
    double theta_max() const { return th_max_; }
    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }

  private:
    struct Vertex {
        double x, y, p;
    };
    std::vector<Vertex> verts_;
    std::vector<std::uint32_t> tris_;  // vertex index triples
    std::vector<std::vector<std::uint32_t>> bins_;
    std::size_t nbx_ = 1, nby_ = 1;
    double x0_ = 0, y0_ = 0, bw_ = 1, bh_ = 1;
    double r_min_ = 0, r_max_ = 0, th_min_ = 0, th_max_ = 0;
    double p_min_ = 0, p_max_ = 0;

    std::size_t bin_of(double x, double y) const;
};

}  // namespace pgrad
