#include "sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stratsamp {

void SamplerSpec::validate() const {
    if (d < 1) throw std::invalid_argument("sampler: dimension must be >= 1");
    if (n < 1) throw std::invalid_argument("sampler: point count must be >= 1");
    if (strategy == Strategy::Stratified || strategy == Strategy::Hsfc) {
        if (!partition) throw std::invalid_argument("sampler: partition required");
        partition->validate();
        if (partition->d != d) throw std::invalid_argument("sampler: partition dimension mismatch");
        if (partition->n != n)
            throw std::invalid_argument("sampler: point count must equal the cell count");
        if (strategy == Strategy::Hsfc && partition->kind != PartitionKind::Hsfc)
            throw std::invalid_argument("sampler: hsfc strategy needs an hsfc partition");
    }
}

namespace {

PointSet sample_simple(int d, std::int64_t n, RngStream& stream) {
    std::vector<double> coords(static_cast<std::size_t>(n) * d);
    for (auto& c : coords) c = stream.next_double();
    return PointSet(d, std::move(coords));
}

PointSet sample_stratified(const PartitionSpec& pspec, RngStream& stream) {
    Partition part = build_partition(pspec);
    const int d = pspec.d;
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(pspec.n) * d);
    for (const Cell& cell : part.cells()) {
        for (int k = 0; k < d; ++k) {
            double u = stream.next_double();
            coords.push_back(cell.lower[k] + u * (cell.upper[k] - cell.lower[k]));
        }
    }
    return PointSet(d, std::move(coords));
}

PointSet sample_hsfc(const SamplerSpec& spec, RngStream& stream) {
    HilbertParams params{spec.d, spec.hsfc_depth};
    params.validate();
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(spec.n) * spec.d);
    const double n = static_cast<double>(spec.n);
    for (std::int64_t i = 0; i < spec.n; ++i) {
        // u_i uniform on the parameter interval I_i = [(i-1)/N, i/N)
        double u = (static_cast<double>(i) + stream.next_double()) / n;
        if (u >= 1.0) u = std::nextafter(1.0, 0.0);
        Point p = hilbert_map(params, u);
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointSet(spec.d, std::move(coords));
}

PointSet sample_lhs(int d, std::int64_t n, RngStream& stream) {
    std::vector<double> coords(static_cast<std::size_t>(n) * d);
    std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
    for (int j = 0; j < d; ++j) {
        std::iota(perm.begin(), perm.end(), std::int64_t{0});
        for (std::int64_t i = n - 1; i > 0; --i) {
            std::int64_t r = static_cast<std::int64_t>(
                stream.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[r]);
        }
        for (std::int64_t i = 0; i < n; ++i) {
            double u = stream.next_double();
            coords[static_cast<std::size_t>(i) * d + j] =
                (static_cast<double>(perm[i]) + u) / static_cast<double>(n);
        }
    }
    return PointSet(d, std::move(coords));
}

}  // namespace

PointSet sample(const SamplerSpec& spec, RngStream& stream) {
    spec.validate();
    switch (spec.strategy) {
        case Strategy::SimpleRandom:
            return sample_simple(spec.d, spec.n, stream);
        case Strategy::Stratified:
            if (spec.partition->kind == PartitionKind::Trivial)
                return sample_simple(spec.d, spec.n, stream);
            return sample_stratified(*spec.partition, stream);
        case Strategy::Hsfc:
            return sample_hsfc(spec, stream);
        case Strategy::Lhs:
            return sample_lhs(spec.d, spec.n, stream);
    }
    throw std::logic_error("sample: unknown strategy");
}

void write_points(std::ostream& os, const PointSet& points) {
    os << points.dim() << ' ' << points.size() << '\n';
    char buf[40];
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (int k = 0; k < points.dim(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g", points.coord(i, k));
            if (k) os << ' ';
            os << buf;
        }
        os << '\n';
    }
}

void write_points_file(const std::string& path, const PointSet& points) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open point file for writing: " + path);
    write_points(os, points);
}

PointSet read_points(std::istream& is) {
    int d = 0;
    std::size_t n = 0;
    if (!(is >> d >> n) || d < 1 || n < 1)
        throw std::runtime_error("point file: bad header");
    std::vector<double> coords(n * static_cast<std::size_t>(d));
    for (auto& c : coords)
        if (!(is >> c)) throw std::runtime_error("point file: truncated coordinates");
    return PointSet(d, std::move(coords));
}

PointSet read_points_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open point file: " + path);
    return read_points(is);
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::SimpleRandom: return "simple_random";
        case Strategy::Stratified: return "stratified";
        case Strategy::Lhs: return "lhs";
        case Strategy::Hsfc: return "hsfc";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "simple_random") return Strategy::SimpleRandom;
    if (name == "stratified") return Strategy::Stratified;
    if (name == "lhs") return Strategy::Lhs;
    if (name == "hsfc") return Strategy::Hsfc;
    throw std::invalid_argument("unknown sampling strategy: " + name);
}

}  // namespace stratsamp
