#pragma once

#include <cstdint>
#include <optional>

#include "geometry.hpp"
#include "rng.hpp"

namespace stratsamp {

struct DiscrepancyEstimate {
    double p = 2.0;                      // exponent; infinity() for star
    double value = 0.0;                  // reported as L_p (not its p-th power)
    std::optional<double> stderr_pp;     // stderr of the L_p^p estimate (MC only)
    std::int64_t nodes = 0;              // MC node count, 0 for exact
    bool exact() const { return !stderr_pp.has_value(); }
};

// (A([0,z))/N) - prod z_k, in [-1, 1].
double local_discrepancy(const PointSet& points, const Point& z);

// Closed-form L2 star discrepancy (Warnock's double sum), O(N^2 d).
DiscrepancyEstimate l2_exact(const PointSet& points);

// Monte Carlo estimate of the L_p discrepancy over M uniform nodes.
DiscrepancyEstimate lp_estimate(const PointSet& points, double p, std::int64_t nodes,
                                RngStream& stream);

// Per-replication estimate of L_p^p (the raw MC mean), used by the moment
// engine; value/stderr refer to L_p^p itself.
struct LpPowEstimate {
    double value = 0.0;
    double stderr_value = 0.0;
};
LpPowEstimate lp_pow_estimate(const PointSet& points, double p, std::int64_t nodes,
                              RngStream& stream);

// Exact star discrepancy by two-sided critical-grid evaluation. Guarded:
// refuses instances where the critical grid exceeds 1e7 nodes.
DiscrepancyEstimate star_exact_small(const PointSet& points);

struct SizeLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stratsamp
