#include "partition.hpp"

#include <cmath>
#include <limits>

namespace stratsamp {

std::size_t box_count(const PointSet& points, const AnchoredBox& box) {
    if (static_cast<int>(box.upper.size()) != points.dim())
        throw std::invalid_argument("box_count: dimension mismatch");
    const int d = points.dim();
    std::size_t count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double* p = points.row(i);
        bool inside = true;
        for (int k = 0; k < d; ++k) {
            if (!(p[k] < box.upper[k])) { inside = false; break; }
        }
        if (inside) ++count;
    }
    return count;
}

PartitionSpec PartitionSpec::grid(int d, std::int64_t m) {
    PartitionSpec s;
    s.d = d;
    s.kind = PartitionKind::Grid;
    s.m = {m};
    std::int64_t n = 1;
    for (int i = 0; i < d; ++i) {
        if (m != 0 && n > std::numeric_limits<std::int64_t>::max() / m)
            throw std::invalid_argument("grid: m^d overflows");
        n *= m;
    }
    s.n = n;
    s.validate();
    return s;
}

PartitionSpec PartitionSpec::rect_grid(std::vector<std::int64_t> m) {
    PartitionSpec s;
    s.d = static_cast<int>(m.size());
    s.kind = PartitionKind::RectGrid;
    std::int64_t n = 1;
    for (std::int64_t mi : m) {
        if (mi == 0) throw std::invalid_argument("rect_grid: zero side count");
        if (n > std::numeric_limits<std::int64_t>::max() / mi)
            throw std::invalid_argument("rect_grid: cell count overflows");
        n *= mi;
    }
    s.m = std::move(m);
    s.n = n;
    s.validate();
    return s;
}

PartitionSpec PartitionSpec::hsfc(int d, std::int64_t n, int depth) {
    PartitionSpec s;
    s.d = d;
    s.kind = PartitionKind::Hsfc;
    s.n = n;
    s.hsfc_depth = depth;
    s.validate();
    return s;
}

PartitionSpec PartitionSpec::trivial(int d, std::int64_t n) {
    PartitionSpec s;
    s.d = d;
    s.kind = PartitionKind::Trivial;
    s.n = n;
    s.validate();
    return s;
}

void PartitionSpec::validate() const {
    if (d < 1) throw std::invalid_argument("partition: dimension must be >= 1");
    if (n < 1) throw std::invalid_argument("partition: cell count must be >= 1");
    switch (kind) {
        case PartitionKind::Grid:
            if (m.size() != 1 || m[0] < 1) throw std::invalid_argument("grid: need m >= 1");
            break;
        case PartitionKind::RectGrid: {
            if (static_cast<int>(m.size()) != d)
                throw std::invalid_argument("rect_grid: need one side count per axis");
            for (std::int64_t mi : m)
                if (mi < 1) throw std::invalid_argument("rect_grid: side counts must be >= 1");
            break;
        }
        case PartitionKind::Hsfc:
        case PartitionKind::Trivial:
            break;
    }
}

double PartitionSpec::c1() const {
    switch (kind) {
        case PartitionKind::Grid:
            return std::sqrt(static_cast<double>(d));
        case PartitionKind::RectGrid: {
            // exact: diam = sqrt(sum 1/m_i^2), same for every cell
            return c2();
        }
        case PartitionKind::Hsfc:
            return 1.0;
        case PartitionKind::Trivial:
            throw std::invalid_argument("trivial partition has no diameter certificate");
    }
    return 0.0;
}

double PartitionSpec::c2() const {
    switch (kind) {
        case PartitionKind::Grid:
            return std::sqrt(static_cast<double>(d));
        case PartitionKind::RectGrid: {
            double s = 0.0;
            for (std::int64_t mi : m) s += 1.0 / (static_cast<double>(mi) * static_cast<double>(mi));
            return std::pow(static_cast<double>(n), 1.0 / d) * std::sqrt(s);
        }
        case PartitionKind::Hsfc:
            return 2.0 * std::sqrt(static_cast<double>(d) + 3.0);
        case PartitionKind::Trivial:
            throw std::invalid_argument("trivial partition has no diameter certificate");
    }
    return 0.0;
}

double Cell::diameter() const {
    double s = 0.0;
    for (std::size_t k = 0; k < lower.size(); ++k) {
        double e = upper[k] - lower[k];
        s += e * e;
    }
    return std::sqrt(s);
}

bool Cell::contains(const Point& p) const {
    for (std::size_t k = 0; k < lower.size(); ++k) {
        bool closed_above = upper[k] >= 1.0;
        if (p[k] < lower[k]) return false;
        if (closed_above ? p[k] > upper[k] : p[k] >= upper[k]) return false;
    }
    return true;
}

namespace {

std::vector<std::int64_t> grid_sides(const PartitionSpec& spec) {
    if (spec.kind == PartitionKind::Grid) return std::vector<std::int64_t>(spec.d, spec.m[0]);
    return spec.m;
}

}  // namespace

Partition build_partition(const PartitionSpec& spec) {
    spec.validate();
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(spec.n));
    switch (spec.kind) {
        case PartitionKind::Grid:
        case PartitionKind::RectGrid: {
            const auto sides = grid_sides(spec);
            std::vector<std::int64_t> idx(spec.d, 0);
            for (std::int64_t i = 0; i < spec.n; ++i) {
                Cell c;
                c.index = i;
                c.measure = 1.0 / static_cast<double>(spec.n);
                c.lower.resize(spec.d);
                c.upper.resize(spec.d);
                for (int k = 0; k < spec.d; ++k) {
                    c.lower[k] = static_cast<double>(idx[k]) / static_cast<double>(sides[k]);
                    c.upper[k] = static_cast<double>(idx[k] + 1) / static_cast<double>(sides[k]);
                }
                cells.push_back(std::move(c));
                // lexicographic odometer, last axis fastest
                for (int k = spec.d - 1; k >= 0; --k) {
                    if (++idx[k] < sides[k]) break;
                    idx[k] = 0;
                }
            }
            break;
        }
        case PartitionKind::Hsfc: {
            for (std::int64_t i = 0; i < spec.n; ++i) {
                Cell c;
                c.index = i;
                c.measure = 1.0 / static_cast<double>(spec.n);
                c.a = static_cast<double>(i) / static_cast<double>(spec.n);
                c.b = static_cast<double>(i + 1) / static_cast<double>(spec.n);
                cells.push_back(std::move(c));
            }
            break;
        }
        case PartitionKind::Trivial: {
            for (std::int64_t i = 0; i < spec.n; ++i) {
                Cell c;
                c.index = i;
                c.measure = 1.0 / static_cast<double>(spec.n);
                c.lower.assign(spec.d, 0.0);
                c.upper.assign(spec.d, 1.0);
                cells.push_back(std::move(c));
            }
            break;
        }
    }
    return Partition(spec, std::move(cells));
}

std::int64_t count_boundary_cells(const PartitionSpec& spec, const AnchoredBox& box) {
    spec.validate();
    if (spec.kind != PartitionKind::Grid && spec.kind != PartitionKind::RectGrid)
        throw std::invalid_argument("count_boundary_cells: grid partitions only");
    if (static_cast<int>(box.upper.size()) != spec.d)
        throw std::invalid_argument("count_boundary_cells: dimension mismatch");

    const auto sides = grid_sides(spec);
    // Per axis: t_k = index of the half-open cell containing z_k, which is also
    // the last cell meeting the closed footprint [0, z_k].
    std::vector<std::int64_t> t(spec.d);
    std::vector<bool> inner(spec.d);
    for (int k = 0; k < spec.d; ++k) {
        double z = box.upper[k];
        if (z < 0.0 || z > 1.0)
            throw std::invalid_argument("count_boundary_cells: box corner outside the cube");
        inner[k] = z > 0.0 && z < 1.0;
        std::int64_t idx = static_cast<std::int64_t>(std::floor(z * static_cast<double>(sides[k])));
        if (idx >= sides[k]) idx = sides[k] - 1;
        t[k] = idx;
    }

    // Union over inner axes k of {cells with index_k == t_k, index_j <= t_j}.
    double full = 1.0, miss = 1.0;
    bool any_inner = false;
    for (int k = 0; k < spec.d; ++k) {
        double c = static_cast<double>(t[k] + 1);
        full *= c;
        if (inner[k]) {
            any_inner = true;
            miss *= c - 1.0;
        } else {
            miss *= c;
        }
    }
    if (!any_inner) return 0;
    return static_cast<std::int64_t>(std::llround(full - miss));
}

}  // namespace stratsamp
