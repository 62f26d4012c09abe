#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "geometry.hpp"

namespace stratsamp {

enum class PartitionKind { Grid, RectGrid, Hsfc, Trivial };

// Equal-measure partition request. N cells of measure 1/N each.
struct PartitionSpec {
    int d = 0;
    PartitionKind kind = PartitionKind::Grid;
    std::int64_t n = 0;                // cell count
    std::vector<std::int64_t> m;       // grid: {m}; rect_grid: {m_1..m_d}
    int hsfc_depth = 0;                // hsfc only; 0 means default

    static PartitionSpec grid(int d, std::int64_t m);
    static PartitionSpec rect_grid(std::vector<std::int64_t> m);
    static PartitionSpec hsfc(int d, std::int64_t n, int depth = 0);
    static PartitionSpec trivial(int d, std::int64_t n);

    // Lower / upper diameter constants of the diameter certificate
    // diam in [c1 N^{-1/d}, c2 N^{-1/d}]. Not defined for trivial.
    double c1() const;
    double c2() const;

    void validate() const;
};

struct Cell {
    std::int64_t index = 0;
    // axis box [lower, upper) for grid kinds and trivial; parameter
    // interval [a,b) in [0,1] for hsfc cells.
    std::vector<double> lower, upper;
    double a = 0.0, b = 0.0;
    double measure = 0.0;

    bool is_interval() const { return lower.empty(); }
    double diameter() const;  // axis-box cells only
    bool contains(const Point& p) const;  // half-open, upper face closed at 1
};

class Partition {
public:
    Partition(PartitionSpec spec, std::vector<Cell> cells)
        : spec_(std::move(spec)), cells_(std::move(cells)) {}

    const PartitionSpec& spec() const { return spec_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::int64_t size() const { return static_cast<std::int64_t>(cells_.size()); }

private:
    PartitionSpec spec_;
    std::vector<Cell> cells_;
};

// Cells ordered lexicographically (grids) or by parameter interval (hsfc).
Partition build_partition(const PartitionSpec& spec);

// Cells whose half-open body meets an inner face {x_k = z_k} x prod_{j!=k}[0, z_j]
// of the box boundary. Faces on the cube's own boundary (z_k = 0 or 1) are
// excluded. Grid kinds only.
std::int64_t count_boundary_cells(const PartitionSpec& spec, const AnchoredBox& box);

}  // namespace stratsamp
