#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stratsamp {

using Point = std::vector<double>;

// N points in [0,1]^d, stored row-major.
class PointSet {
public:
    PointSet(int d, std::vector<double> coords) : d_(d), coords_(std::move(coords)) {
        if (d < 1) throw std::invalid_argument("PointSet: dimension must be >= 1");
        if (coords_.empty() || coords_.size() % static_cast<std::size_t>(d) != 0)
            throw std::invalid_argument("PointSet: coordinate count not a multiple of d");
    }

    int dim() const { return d_; }
    std::size_t size() const { return coords_.size() / static_cast<std::size_t>(d_); }
    double coord(std::size_t i, int k) const { return coords_[i * static_cast<std::size_t>(d_) + k]; }
    const double* row(std::size_t i) const { return coords_.data() + i * static_cast<std::size_t>(d_); }
    const std::vector<double>& coords() const { return coords_; }

    Point point(std::size_t i) const {
        return Point(row(i), row(i) + d_);
    }

private:
    int d_;
    std::vector<double> coords_;
};

// Half-open box [0, upper) anchored at the origin.
struct AnchoredBox {
    Point upper;

    double volume() const {
        double v = 1.0;
        for (double z : upper) v *= z;
        return v;
    }
};

// Number of points p with p_k < z_k for all k.
std::size_t box_count(const PointSet& points, const AnchoredBox& box);

}  // namespace stratsamp
