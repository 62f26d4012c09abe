#pragma once

#include <cstdint>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace stratsamp {

// Radical inverse of i-1 in base b; the i-th van der Corput point.
double van_der_corput(int base, std::int64_t i);

// Nested uniform scramble of the base-b van der Corput sequence. The
// permutation applied to digit j is keyed by the digit prefix
// (y_1, ..., y_{j-1}) and derived deterministically from the seed, so the
// tree never needs to be materialized and lookups are thread-safe.
class ScrambleTree {
public:
    ScrambleTree(int base, std::uint64_t seed, bool identity = false);

    int base() const { return base_; }

    // x_i truncated to the first `digits` scrambled digits.
    double scrambled(std::int64_t i, int digits) const;

    // Permutation image of `digit` under the permutation for `prefix_key`.
    int permute(std::uint64_t prefix_key, int digit) const;

private:
    int base_;
    std::uint64_t seed_;
    bool identity_;
};

struct HilbertParams {
    int d = 2;
    int depth = 0;  // 0 picks the default floor(62/d)

    int effective_depth() const;
    void validate() const;
};

// H(u): descend `depth` levels of the d-dimensional Hilbert curve and map the
// fractional remainder linearly inside the final subcube. Accurate to 2^-depth
// per coordinate.
Point hilbert_map(const HilbertParams& params, double u);

// Integer coordinates (in [0, 2^depth)^d) of the level-depth subcube visited
// at curve position `index` in [0, 2^{d*depth}).
std::vector<std::uint32_t> hilbert_axes(const HilbertParams& params, std::uint64_t index);

// Inverse of hilbert_axes.
std::uint64_t hilbert_index(const HilbertParams& params, const std::vector<std::uint32_t>& axes);

// Exact union of level-depth subcubes whose parameter intervals lie in [a, b);
// a and b must be multiples of 2^{-d*depth}. Returned as integer coordinates.
std::vector<std::vector<std::uint32_t>> hilbert_cell_region(const HilbertParams& params,
                                                            double a, double b);

}  // namespace stratsamp
