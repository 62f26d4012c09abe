#include "hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace stratsamp {

double van_der_corput(int base, std::int64_t i) {
    if (base < 2) throw std::invalid_argument("van_der_corput: base must be >= 2");
    if (i < 1) throw std::invalid_argument("van_der_corput: index must be >= 1");
    std::int64_t n = i - 1;
    double inv = 1.0 / base;
    double scale = inv;
    double x = 0.0;
    while (n > 0) {
        x += static_cast<double>(n % base) * scale;
        n /= base;
        scale *= inv;
    }
    return x;
}

ScrambleTree::ScrambleTree(int base, std::uint64_t seed, bool identity)
    : base_(base), seed_(seed), identity_(identity) {
    if (base < 2) throw std::invalid_argument("ScrambleTree: base must be >= 2");
}

int ScrambleTree::permute(std::uint64_t prefix_key, int digit) const {
    if (identity_) return digit;
    // Fisher-Yates of {0..b-1} driven by a stream keyed on (seed, prefix).
    RngStream rng(seed_, prefix_key);
    int perm[64];
    for (int v = 0; v < base_; ++v) perm[v] = v;
    for (int v = base_ - 1; v > 0; --v) {
        int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(v) + 1));
        int tmp = perm[v];
        perm[v] = perm[j];
        perm[j] = tmp;
    }
    return perm[digit];
}

double ScrambleTree::scrambled(std::int64_t i, int digits) const {
    if (i < 1) throw std::invalid_argument("ScrambleTree: index must be >= 1");
    if (digits < 1) throw std::invalid_argument("ScrambleTree: need at least one digit");
    if (base_ > 64) throw std::invalid_argument("ScrambleTree: base too large");
    // digits of i-1, least significant first: y_1, y_2, ...
    std::int64_t n = i - 1;
    std::uint64_t prefix_key = 0x243f6a8885a308d3ULL;  // root
    double inv = 1.0 / base_;
    double scale = inv;
    double x = 0.0;
    for (int j = 0; j < digits; ++j) {
        int y = static_cast<int>(n % base_);
        n /= base_;
        int xd = permute(prefix_key, y);
        x += static_cast<double>(xd) * scale;
        scale *= inv;
        prefix_key = mix_u64(prefix_key, static_cast<std::uint64_t>(y) + 1);
    }
    return x;
}

int HilbertParams::effective_depth() const {
    int k = depth > 0 ? depth : 62 / d;
    return k;
}

void HilbertParams::validate() const {
    if (d < 2) throw std::invalid_argument("hilbert: dimension must be >= 2");
    int k = effective_depth();
    if (k < 1 || static_cast<std::int64_t>(d) * k > 62)
        throw std::invalid_argument("hilbert: need 1 <= d*depth <= 62");
}

namespace {

// Skilling's transforms between the transposed Hilbert index and axis
// coordinates ("Programming the Hilbert curve", 2004).
void transpose_to_axes(std::uint32_t* x, int bits, int dims) {
    std::uint32_t n = 2u << (bits - 1), p, q, t;
    t = x[dims - 1] >> 1;
    for (int i = dims - 1; i > 0; --i) x[i] ^= x[i - 1];
    x[0] ^= t;
    for (q = 2; q != n; q <<= 1) {
        p = q - 1;
        for (int i = dims - 1; i >= 0; --i) {
            if (x[i] & q) {
                x[0] ^= p;
            } else {
                t = (x[0] ^ x[i]) & p;
                x[0] ^= t;
                x[i] ^= t;
            }
        }
    }
}

void axes_to_transpose(std::uint32_t* x, int bits, int dims) {
    std::uint32_t m = 1u << (bits - 1), p, q, t;
    for (q = m; q > 1; q >>= 1) {
        p = q - 1;
        for (int i = 0; i < dims; ++i) {
            if (x[i] & q) {
                x[0] ^= p;
            } else {
                t = (x[0] ^ x[i]) & p;
                x[0] ^= t;
                x[i] ^= t;
            }
        }
    }
    for (int i = 1; i < dims; ++i) x[i] ^= x[i - 1];
    t = 0;
    for (q = m; q > 1; q >>= 1)
        if (x[dims - 1] & q) t ^= q - 1;
    for (int i = 0; i < dims; ++i) x[i] ^= t;
}

}  // namespace

std::vector<std::uint32_t> hilbert_axes(const HilbertParams& params, std::uint64_t index) {
    params.validate();
    const int d = params.d;
    const int k = params.effective_depth();
    std::vector<std::uint32_t> x(d, 0);
    // Deinterleave: level l group holds bit (k-1-l) of each axis, axis 0 first.
    for (int l = 0; l < k; ++l) {
        for (int i = 0; i < d; ++i) {
            int bitpos = (k - 1 - l) * d + (d - 1 - i);
            if ((index >> bitpos) & 1ULL) x[i] |= 1u << (k - 1 - l);
        }
    }
    transpose_to_axes(x.data(), k, d);
    return x;
}

std::uint64_t hilbert_index(const HilbertParams& params, const std::vector<std::uint32_t>& axes) {
    params.validate();
    const int d = params.d;
    const int k = params.effective_depth();
    if (static_cast<int>(axes.size()) != d)
        throw std::invalid_argument("hilbert_index: dimension mismatch");
    std::vector<std::uint32_t> x = axes;
    axes_to_transpose(x.data(), k, d);
    std::uint64_t index = 0;
    for (int l = 0; l < k; ++l) {
        for (int i = 0; i < d; ++i) {
            int bitpos = (k - 1 - l) * d + (d - 1 - i);
            if ((x[i] >> (k - 1 - l)) & 1u) index |= 1ULL << bitpos;
        }
    }
    return index;
}

Point hilbert_map(const HilbertParams& params, double u) {
    params.validate();
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("hilbert_map: u must be in [0,1)");
    const int d = params.d;
    const int k = params.effective_depth();
    const double cells = std::ldexp(1.0, d * k);
    double scaled = u * cells;
    std::uint64_t index = static_cast<std::uint64_t>(scaled);
    const std::uint64_t last = static_cast<std::uint64_t>(cells) - 1;
    if (index > last) index = last;
    double frac = scaled - static_cast<double>(index);
    auto axes = hilbert_axes(params, index);
    const double side = std::ldexp(1.0, -k);
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = (static_cast<double>(axes[i]) + frac) * side;
    return p;
}

std::vector<std::vector<std::uint32_t>> hilbert_cell_region(const HilbertParams& params,
                                                            double a, double b) {
    params.validate();
    if (!(a >= 0.0 && a < b && b <= 1.0))
        throw std::invalid_argument("hilbert_cell_region: need 0 <= a < b <= 1");
    const int d = params.d;
    const int k = params.effective_depth();
    const double cells = std::ldexp(1.0, d * k);
    double lo = a * cells;
    double hi = b * cells;
    double lo_r = std::nearbyint(lo);
    double hi_r = std::nearbyint(hi);
    const double tol = 1e-9;
    if (std::abs(lo - lo_r) > tol || std::abs(hi - hi_r) > tol)
        throw std::invalid_argument("hilbert_cell_region: endpoints not aligned to 2^-(d*depth)");
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(static_cast<std::size_t>(hi_r - lo_r));
    for (std::uint64_t idx = static_cast<std::uint64_t>(lo_r); idx < static_cast<std::uint64_t>(hi_r); ++idx)
        out.push_back(hilbert_axes(params, idx));
    return out;
}

}  // namespace stratsamp
