#include "discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace stratsamp {

double local_discrepancy(const PointSet& points, const Point& z) {
    if (static_cast<int>(z.size()) != points.dim())
        throw std::invalid_argument("local_discrepancy: dimension mismatch");
    AnchoredBox box{z};
    double frac = static_cast<double>(box_count(points, box)) / static_cast<double>(points.size());
    return frac - box.volume();
}

DiscrepancyEstimate l2_exact(const PointSet& points) {
    const int d = points.dim();
    const std::size_t n = points.size();
    const double nd = static_cast<double>(n);

    double s1 = 0.0;  // sum of prod (1 - x^2)/2
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        const double* p = points.row(i);
        for (int k = 0; k < d; ++k) prod *= (1.0 - p[k] * p[k]) * 0.5;
        s1 += prod;
    }

    double s2 = 0.0;  // double sum of prod min(1-x, 1-y)
    for (std::size_t i = 0; i < n; ++i) {
        const double* pi = points.row(i);
        double diag = 1.0;
        for (int k = 0; k < d; ++k) diag *= 1.0 - pi[k];
        s2 += diag;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* pj = points.row(j);
            double prod = 1.0;
            for (int k = 0; k < d; ++k) prod *= std::min(1.0 - pi[k], 1.0 - pj[k]);
            s2 += 2.0 * prod;
        }
    }

    double l2sq = std::pow(3.0, -d) - (2.0 / nd) * s1 + s2 / (nd * nd);
    if (l2sq < 0.0) l2sq = 0.0;  // cancellation guard
    DiscrepancyEstimate e;
    e.p = 2.0;
    e.value = std::sqrt(l2sq);
    return e;
}

LpPowEstimate lp_pow_estimate(const PointSet& points, double p, std::int64_t nodes,
                              RngStream& stream) {
    if (p < 1.0) throw std::invalid_argument("lp_estimate: p must be >= 1");
    if (nodes < 2) throw std::invalid_argument("lp_estimate: need at least 2 nodes");
    const int d = points.dim();
    Point z(d);
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t m = 0; m < nodes; ++m) {
        for (int k = 0; k < d; ++k) z[k] = stream.next_double();
        double v = std::pow(std::abs(local_discrepancy(points, z)), p);
        sum += v;
        sumsq += v * v;
    }
    const double mn = static_cast<double>(nodes);
    double mean = sum / mn;
    double var = (sumsq - sum * sum / mn) / (mn - 1.0);
    if (var < 0.0) var = 0.0;
    return LpPowEstimate{mean, std::sqrt(var / mn)};
}

DiscrepancyEstimate lp_estimate(const PointSet& points, double p, std::int64_t nodes,
                                RngStream& stream) {
    LpPowEstimate raw = lp_pow_estimate(points, p, nodes, stream);
    DiscrepancyEstimate e;
    e.p = p;
    e.value = std::pow(raw.value, 1.0 / p);
    e.stderr_pp = raw.stderr_value;
    e.nodes = nodes;
    return e;
}

DiscrepancyEstimate star_exact_small(const PointSet& points) {
    const int d = points.dim();
    const std::size_t n = points.size();

    // Critical coordinates per axis: the point coordinates plus 1.
    std::vector<std::vector<double>> grid(d);
    double total = 1.0;
    for (int k = 0; k < d; ++k) {
        auto& g = grid[k];
        g.reserve(n + 1);
        for (std::size_t i = 0; i < n; ++i) g.push_back(points.coord(i, k));
        g.push_back(1.0);
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        total *= static_cast<double>(g.size());
        if (total > 1e7) throw SizeLimitError("star_exact_small: critical grid exceeds 1e7 nodes");
    }

    std::vector<std::size_t> idx(d, 0);
    Point z(d);
    double best = 0.0;
    for (;;) {
        double vol = 1.0;
        for (int k = 0; k < d; ++k) {
            z[k] = grid[k][idx[k]];
            vol *= z[k];
        }
        std::size_t open = 0, closed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* p = points.row(i);
            bool in_open = true, in_closed = true;
            for (int k = 0; k < d; ++k) {
                if (!(p[k] < z[k])) in_open = false;
                if (!(p[k] <= z[k])) { in_closed = false; break; }
            }
            if (in_open) ++open;
            if (in_closed) ++closed;
        }
        double a_open = static_cast<double>(open) / static_cast<double>(n);
        double a_closed = static_cast<double>(closed) / static_cast<double>(n);
        best = std::max(best, std::max(vol - a_open, a_closed - vol));

        int k = d - 1;
        for (; k >= 0; --k) {
            if (++idx[k] < grid[k].size()) break;
            idx[k] = 0;
        }
        if (k < 0) break;
    }

    DiscrepancyEstimate e;
    e.p = std::numeric_limits<double>::infinity();
    e.value = best;
    return e;
}

}  // namespace stratsamp
