#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "discrepancy.hpp"
#include "rkhs.hpp"

namespace stratsamp {

double bound_value(const std::string& theorem_id, int d, std::int64_t n, double p,
                   const std::optional<PartitionSpec>& partition,
                   std::optional<double> variance_constant) {
    if (d < 1 || n < 1) throw std::invalid_argument("bound: need d >= 1 and N >= 1");
    const double dd = static_cast<double>(d);
    const double nd = static_cast<double>(n);
    const double n_strat = std::pow(nd, 1.0 + 1.0 / dd);
    const double n_lp = std::pow(nd, p / 2.0 + p / (2.0 * dd));

    if (theorem_id == "thm3.3") {
        if (!partition) throw std::invalid_argument("thm3.3: partition required for c2(d)");
        return dd * partition->c2() / n_strat;
    }
    if (theorem_id == "cor3.4") return dd / n_strat;
    if (theorem_id == "cor3.5") return 2.0 * dd * std::sqrt(dd + 3.0) / n_strat;
    if (theorem_id == "thm3.6") {
        if (!variance_constant) throw std::invalid_argument("thm3.6: variance constant C required");
        if (n < 2) throw std::invalid_argument("thm3.6: need N >= 2");
        return *variance_constant / (nd - 1.0);
    }
    if (theorem_id == "cor3.8") return std::pow(dd, 1.5) / nd;
    if (theorem_id == "thm4.1") {
        if (!partition) throw std::invalid_argument("thm4.1: partition required for c2(d)");
        return std::pow(dd * partition->c2(), p / 2.0) / n_lp;
    }
    if (theorem_id == "cor4.2") return std::pow(dd, p / 2.0) / n_lp;
    if (theorem_id == "cor4.3") return std::pow(2.0 * dd * std::sqrt(dd + 3.0), p / 2.0) / n_lp;
    if (theorem_id == "cor4.5") {
        const double pi = 3.14159265358979323846;
        double c = std::pow(2.0, p / 2.0) / std::sqrt(pi) * std::tgamma((1.0 + p) / 2.0) *
                   std::pow(2.0 / (2.0 + p), dd);
        return c * std::pow(nd, -p / 2.0);
    }
    throw std::invalid_argument("unknown theorem id: " + theorem_id);
}

std::string target_name(MomentTarget t) {
    switch (t) {
        case MomentTarget::LpPthPower: return "lp_discrepancy_pth_power";
        case MomentTarget::SquaredL2: return "squared_l2";
        case MomentTarget::MseIntegration: return "mse_integration";
        case MomentTarget::VarianceOfMean: return "variance_of_mean";
    }
    return "?";
}

MomentTarget target_from_name(const std::string& name) {
    if (name == "lp_discrepancy_pth_power") return MomentTarget::LpPthPower;
    if (name == "squared_l2") return MomentTarget::SquaredL2;
    if (name == "mse_integration") return MomentTarget::MseIntegration;
    if (name == "variance_of_mean") return MomentTarget::VarianceOfMean;
    throw std::invalid_argument("unknown moment target: " + name);
}

void MomentSpec::validate() const {
    sampler.validate();
    if (reps < 2) throw std::invalid_argument("moment: need at least 2 replications");
    if (p < 1.0) throw std::invalid_argument("moment: p must be >= 1");
    if (threads < 1) throw std::invalid_argument("moment: thread count must be >= 1");
    if (target == MomentTarget::SquaredL2 || target == MomentTarget::MseIntegration) {
        if (p != 2.0) throw std::invalid_argument("moment: this target requires p = 2");
    }
    if (target == MomentTarget::MseIntegration || target == MomentTarget::VarianceOfMean) {
        if (integrand_id.empty()) throw std::invalid_argument("moment: integrand id required");
    }
    if (target == MomentTarget::LpPthPower && lp_nodes < 2)
        throw std::invalid_argument("moment: lp node count must be >= 2");
}

namespace {

struct BoundChoice {
    std::string id;
    std::optional<double> value;
};

BoundChoice infer_bound(const MomentSpec& spec) {
    const auto& s = spec.sampler;
    const bool is_simple =
        s.strategy == Strategy::SimpleRandom ||
        (s.strategy == Strategy::Stratified && s.partition->kind == PartitionKind::Trivial);
    const bool is_grid =
        s.strategy == Strategy::Stratified && s.partition->kind == PartitionKind::Grid;
    const bool is_rect =
        s.strategy == Strategy::Stratified && s.partition->kind == PartitionKind::RectGrid;

    auto make = [&](const std::string& id, std::optional<double> c = std::nullopt) {
        return BoundChoice{id, bound_value(id, s.d, s.n, spec.p, s.partition, c)};
    };

    switch (spec.target) {
        case MomentTarget::SquaredL2:
        case MomentTarget::MseIntegration: {
            BoundChoice b;
            if (is_grid) b = make("cor3.4");
            else if (is_rect) b = make("thm3.3");
            else if (s.strategy == Strategy::Hsfc) b = make("cor3.5");
            else if (is_simple) b = make("cor3.8");
            else return {};  // lhs squared_l2 has no matching closed bound
            if (spec.target == MomentTarget::MseIntegration) {
                // unit-ball bound scaled to the integrand's own norm
                auto suite = integrand_suite(s.d);
                double norm = integrand_by_id(suite, spec.integrand_id).norm_h1k;
                *b.value *= norm * norm;
            }
            return b;
        }
        case MomentTarget::LpPthPower: {
            if (is_grid) return make("cor4.2");
            if (is_rect) return make("thm4.1");
            if (s.strategy == Strategy::Hsfc) return make("cor4.3");
            if (is_simple) return make("cor4.5");
            return {};
        }
        case MomentTarget::VarianceOfMean: {
            if (s.strategy == Strategy::Lhs) {
                auto suite = integrand_suite(s.d);
                double c = integrand_by_id(suite, spec.integrand_id).variance_constant;
                return make("thm3.6", c);
            }
            return {};
        }
    }
    return {};
}

// Per-replication statistic, deterministic in (seed, rep).
double replication_value(const MomentSpec& spec, const Integrand* f, std::int64_t rep) {
    RngStream stream(spec.seed, static_cast<std::uint64_t>(rep));
    PointSet points = sample(spec.sampler, stream);
    switch (spec.target) {
        case MomentTarget::SquaredL2: {
            double l2 = l2_exact(points).value;
            return l2 * l2;
        }
        case MomentTarget::LpPthPower: {
            RngStream nodes(mix_u64(spec.seed, 0x6c705f6e6f646573ULL),
                            static_cast<std::uint64_t>(rep));
            return lp_pow_estimate(points, spec.p, spec.lp_nodes, nodes).value;
        }
        case MomentTarget::MseIntegration: {
            double err = approx_error(*f, points);
            return err * err;
        }
        case MomentTarget::VarianceOfMean: {
            double mean = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) mean += f->eval(points.point(i));
            return mean / static_cast<double>(points.size());
        }
    }
    return 0.0;
}

}  // namespace

MomentReport estimate_moment(const MomentSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<Integrand> suite;
    const Integrand* f = nullptr;
    if (!spec.integrand_id.empty()) {
        suite = integrand_suite(spec.sampler.d);
        f = &integrand_by_id(suite, spec.integrand_id);
    }

    const std::int64_t r = spec.reps;
    std::vector<double> values(static_cast<std::size_t>(r));
    const int nthreads = static_cast<int>(std::min<std::int64_t>(spec.threads, r));
    if (nthreads <= 1) {
        for (std::int64_t i = 0; i < r; ++i)
            values[static_cast<std::size_t>(i)] = replication_value(spec, f, i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                for (std::int64_t i = t; i < r; i += nthreads)
                    values[static_cast<std::size_t>(i)] = replication_value(spec, f, i);
            });
        }
        for (auto& th : pool) th.join();
    }

    // index-ordered reduction keeps the result independent of thread count
    const double rd = static_cast<double>(r);
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= rd;
    double m2 = 0.0, m4 = 0.0;
    for (double v : values) {
        double e = v - mean;
        m2 += e * e;
        m4 += e * e * e * e;
    }
    double var = m2 / (rd - 1.0);

    MomentReport rep;
    rep.reps = r;
    if (spec.target == MomentTarget::VarianceOfMean) {
        rep.estimate = var;
        // stderr of the variance estimator from the fourth central moment
        double m4n = m4 / rd;
        double se2 = (m4n - var * var * (rd - 3.0) / (rd - 1.0)) / rd;
        rep.stderr_value = se2 > 0.0 ? std::sqrt(se2) : 0.0;
    } else {
        rep.estimate = mean;
        rep.stderr_value = std::sqrt(var / rd);
    }

    BoundChoice bc = infer_bound(spec);
    if (bc.value) {
        rep.bound = bc.value;
        rep.bound_id = bc.id;
        if (rep.estimate > 0.0) rep.margin = *bc.value / rep.estimate;
    }

    rep.runtime_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3) throw std::invalid_argument("fit_rate: need at least 3 pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double n = static_cast<double>(pairs.size());
    for (const auto& [nk, est] : pairs) {
        if (!(nk > 0.0) || !(est > 0.0))
            throw std::invalid_argument("fit_rate: values must be positive");
        double x = std::log(nk), y = std::log(est);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double denom = n * sxx - sx * sx;
    if (!(denom > 1e-12 * n * (1.0 + sxx)))
        throw std::invalid_argument("fit_rate: degenerate abscissae");
    RateFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (const auto& [nk, est] : pairs) {
        double e = std::log(est) - (fit.intercept + fit.slope * std::log(nk));
        ss_res += e * e;
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string csv_header() {
    return "strategy,d,N,p,target,reps,seed,estimate,stderr,bound,bound_id,margin";
}

std::string csv_row(const MomentSpec& spec, const MomentReport& report) {
    std::string row;
    row += strategy_name(spec.sampler.strategy);
    row += ',' + std::to_string(spec.sampler.d);
    row += ',' + std::to_string(spec.sampler.n);
    row += ',' + fmt17(spec.p);
    row += ',' + target_name(spec.target);
    row += ',' + std::to_string(spec.reps);
    row += ',' + std::to_string(spec.seed);
    row += ',' + fmt17(report.estimate);
    row += ',' + fmt17(report.stderr_value);
    row += ',';
    if (report.bound) row += fmt17(*report.bound);
    row += ',' + report.bound_id;
    row += ',';
    if (report.margin) row += fmt17(*report.margin);
    return row;
}

}  // namespace stratsamp
