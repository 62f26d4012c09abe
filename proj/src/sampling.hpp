#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "geometry.hpp"
#include "hilbert.hpp"
#include "partition.hpp"
#include "rng.hpp"

namespace stratsamp {

enum class Strategy { SimpleRandom, Stratified, Lhs, Hsfc };

struct SamplerSpec {
    Strategy strategy = Strategy::SimpleRandom;
    int d = 0;
    std::int64_t n = 0;
    std::optional<PartitionSpec> partition;  // stratified and hsfc
    int hsfc_depth = 0;                      // hsfc only; 0 means default

    void validate() const;
};

// One point set from the given stream. Deterministic: the same
// (spec, seed, replication) always produces the same bits.
PointSet sample(const SamplerSpec& spec, RngStream& stream);

// Point file format: first line "d N", then one point per line with
// space-separated coordinates.
void write_points(std::ostream& os, const PointSet& points);
void write_points_file(const std::string& path, const PointSet& points);
PointSet read_points(std::istream& is);
PointSet read_points_file(const std::string& path);

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

}  // namespace stratsamp
