#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sampling.hpp"

namespace stratsamp {

// Closed-form bound table. p and the partition / variance constant are only
// consulted by the theorems that need them.
double bound_value(const std::string& theorem_id, int d, std::int64_t n, double p,
                   const std::optional<PartitionSpec>& partition,
                   std::optional<double> variance_constant);

enum class MomentTarget { LpPthPower, SquaredL2, MseIntegration, VarianceOfMean };

std::string target_name(MomentTarget t);
MomentTarget target_from_name(const std::string& name);

struct MomentSpec {
    SamplerSpec sampler;
    double p = 2.0;
    MomentTarget target = MomentTarget::SquaredL2;
    std::string integrand_id;        // mse_integration / variance_of_mean
    std::int64_t reps = 0;
    std::uint64_t seed = 0;
    std::int64_t lp_nodes = 10000;   // lp_discrepancy_pth_power only
    int threads = 1;

    void validate() const;
};

struct MomentReport {
    double estimate = 0.0;
    double stderr_value = 0.0;
    std::optional<double> bound;
    std::string bound_id;
    std::optional<double> margin;    // bound / estimate
    std::int64_t reps = 0;
    double runtime_sec = 0.0;
};

// Runs R independent replications (substream per replication, parallelized
// over `threads` with index-ordered reduction) and attaches the matching
// theoretical bound when one applies to the sampler/target pair.
MomentReport estimate_moment(const MomentSpec& spec);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// OLS of log(estimate) on log(N).
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs);

// CSV schema shared by the CLI subcommands; floats carry 17 significant digits.
std::string csv_header();
std::string csv_row(const MomentSpec& spec, const MomentReport& report);

}  // namespace stratsamp
