// Acceptance harness: one line per criterion, nonzero exit if any fails.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "discrepancy.hpp"
#include "experiments.hpp"
#include "hilbert.hpp"
#include "rkhs.hpp"
#include "sampling.hpp"

using namespace stratsamp;

namespace {

int g_failures = 0;

int worker_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 4 : static_cast<int>(hc);
}

struct Criterion {
    int index;
    std::string title;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream detail;

    Criterion(int i, std::string t) : index(i), title(std::move(t)) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    }

    ~Criterion() {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d (%s) %.1fs%s%s\n", ok ? "PASS" : "FAIL", index,
                    title.c_str(), secs, ok ? "" : " -- ", ok ? "" : detail.str().c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

PointSet random_set(int d, std::size_t n, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> coords(n * static_cast<std::size_t>(d));
    for (auto& c : coords) c = rng.next_double();
    return PointSet(d, std::move(coords));
}

// d=1 closed form for the squared L2 discrepancy via the order statistics.
double l2sq_1d_oracle(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    auto cube = [](double v) { return v * v * v; };
    double total = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double c = static_cast<double>(i) / n;
        total += (cube(c - prev) - cube(c - xs[i])) / 3.0;
        prev = xs[i];
    }
    total += (cube(1.0 - prev)) / 3.0;
    return total;
}

MomentSpec make_moment(Strategy strategy, int d, std::int64_t n, MomentTarget target,
                       std::int64_t reps, std::uint64_t seed) {
    MomentSpec ms;
    ms.sampler.strategy = strategy;
    ms.sampler.d = d;
    ms.sampler.n = n;
    ms.target = target;
    ms.reps = reps;
    ms.seed = seed;
    ms.threads = worker_threads();
    return ms;
}

void criterion_1() {
    Criterion c(1, "exact L2 vs analytic and quadrature oracles");
    // d=1: analytic piecewise integrals
    {
        double v = l2_exact(PointSet(1, {0.5})).value;
        c.require(std::abs(v * v - 1.0 / 12.0) < 1e-12, "d=1 single midpoint");
        RngStream rng(101);
        for (int t = 0; t < 25; ++t) {
            std::vector<double> xs(9);
            for (auto& x : xs) x = rng.next_double();
            double expect = l2sq_1d_oracle(xs);
            double got = l2_exact(PointSet(1, std::move(xs))).value;
            c.require(std::abs(got * got - expect) < 1e-12, "d=1 random set");
        }
    }
    // d=2: 1000x1000 midpoint quadrature (1e6 cells)
    {
        PointSet ps = random_set(2, 12, 2020);
        double exact = l2_exact(ps).value;
        const int g = 1000;
        double sum = 0.0;
        for (int i = 0; i < g; ++i) {
            for (int j = 0; j < g; ++j) {
                Point z{(i + 0.5) / g, (j + 0.5) / g};
                double v = local_discrepancy(ps, z);
                sum += v * v;
            }
        }
        sum /= static_cast<double>(g) * g;
        c.require(std::abs(exact * exact - sum) < 1e-3, "d=2 quadrature");
    }
}

void criterion_2() {
    Criterion c(2, "simple-random E[L2^2] matches the derived closed form");
    // re-derive (2^-d - 3^-d)/N through the indicator-variance integral
    // int lambda(z)(1 - lambda(z)) dz / N with lambda(z) = prod z_k
    for (int d : {1, 2, 3}) {
        const int g = d == 1 ? 100000 : (d == 2 ? 1000 : 100);
        double integral = 0.0;
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        while (true) {
            double lam = 1.0;
            for (int k = 0; k < d; ++k) lam *= (idx[static_cast<std::size_t>(k)] + 0.5) / g;
            integral += lam * (1.0 - lam);
            int k = d - 1;
            while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == g)
                idx[static_cast<std::size_t>(k--)] = 0;
            if (k < 0) break;
        }
        integral /= std::pow(static_cast<double>(g), d);
        double closed = std::pow(2.0, -d) - std::pow(3.0, -d);
        c.require(std::abs(integral - closed) < 1e-4 * closed, "oracle derivation d=" +
                                                                   std::to_string(d));
        for (std::int64_t n : {4, 16}) {
            auto ms = make_moment(Strategy::SimpleRandom, d, n, MomentTarget::SquaredL2,
                                  100000, 22000 + static_cast<std::uint64_t>(10 * d + n));
            auto rep = estimate_moment(ms);
            double expect = closed / static_cast<double>(n);
            c.require(std::abs(rep.estimate - expect) <= 3.0 * rep.stderr_value,
                      "d=" + std::to_string(d) + " N=" + std::to_string(n));
        }
    }
}

void criterion_3() {
    Criterion c(3, "jittered grid E[L2^2] below d/N^{1+1/d}");
    for (std::int64_t m : {4, 8, 16}) {
        const std::int64_t n = m * m;
        auto ms = make_moment(Strategy::Stratified, 2, n, MomentTarget::SquaredL2, 10000,
                              33000 + static_cast<std::uint64_t>(m));
        ms.sampler.partition = PartitionSpec::grid(2, m);
        auto rep = estimate_moment(ms);
        c.require(rep.bound_id == "cor3.4", "bound id N=" + std::to_string(n));
        c.require(rep.bound && rep.estimate + 3.0 * rep.stderr_value <= *rep.bound,
                  "N=" + std::to_string(n));
    }
}

void criterion_4() {
    Criterion c(4, "hsfc E[L2^2] below 2d*sqrt(d+3)/N^{1+1/d}");
    for (std::int64_t n : {16, 64, 256}) {
        auto ms = make_moment(Strategy::Hsfc, 2, n, MomentTarget::SquaredL2, 10000,
                              44000 + static_cast<std::uint64_t>(n));
        ms.sampler.partition = PartitionSpec::hsfc(2, n);
        auto rep = estimate_moment(ms);
        c.require(rep.bound_id == "cor3.5", "bound id N=" + std::to_string(n));
        c.require(rep.bound && rep.estimate + 3.0 * rep.stderr_value <= *rep.bound,
                  "N=" + std::to_string(n));
    }
}

void criterion_5() {
    Criterion c(5, "fitted decay rates: stratified -1-1/d vs simple -1");
    std::vector<std::pair<double, double>> strat, simple;
    for (std::int64_t m : {4, 8, 16, 32}) {
        const std::int64_t n = m * m;
        auto ms = make_moment(Strategy::Stratified, 2, n, MomentTarget::SquaredL2, 2000,
                              55000 + static_cast<std::uint64_t>(m));
        ms.sampler.partition = PartitionSpec::grid(2, m);
        strat.push_back({static_cast<double>(n), estimate_moment(ms).estimate});
        auto ss = make_moment(Strategy::SimpleRandom, 2, n, MomentTarget::SquaredL2, 2000,
                              56000 + static_cast<std::uint64_t>(m));
        simple.push_back({static_cast<double>(n), estimate_moment(ss).estimate});
    }
    double s1 = fit_rate(strat).slope;
    double s2 = fit_rate(simple).slope;
    c.require(s1 >= -1.7 && s1 <= -1.3,
              "stratified slope " + std::to_string(s1) + " outside [-1.7,-1.3]");
    c.require(s2 >= -1.15 && s2 <= -0.85,
              "simple slope " + std::to_string(s2) + " outside [-1.15,-0.85]");
}

void criterion_6() {
    Criterion c(6, "worst-case-error identity wce == L2 to 1e-9");
    std::uint64_t seed = 66000;
    int count = 0;
    for (int d : {1, 2, 3}) {
        for (int t = 0; t < 34 && count < 100; ++t, ++count) {
            std::size_t n = 1 + static_cast<std::size_t>((seed * 37 + 11) % 64);
            PointSet ps = random_set(d, n, seed++);
            auto r = worst_case_error_identity(ps);
            c.require(std::abs(r.wce - r.l2) <= 1e-9 * r.l2, "d=" + std::to_string(d));
        }
    }
}

void criterion_7() {
    Criterion c(7, "LHS variance of the mean below C/(N-1)");
    for (std::int64_t n : {8, 32}) {
        auto ms = make_moment(Strategy::Lhs, 2, n, MomentTarget::VarianceOfMean, 10000,
                              77000 + static_cast<std::uint64_t>(n));
        ms.integrand_id = "f1";
        auto rep = estimate_moment(ms);
        c.require(rep.bound_id == "thm3.6", "bound id N=" + std::to_string(n));
        const double expect_c = 7.0 / 144.0;
        c.require(rep.bound &&
                      std::abs(*rep.bound - expect_c / static_cast<double>(n - 1)) < 1e-15,
                  "bound value N=" + std::to_string(n));
        c.require(rep.bound && rep.estimate + 3.0 * rep.stderr_value <= *rep.bound,
                  "N=" + std::to_string(n));
    }
}

void criterion_8() {
    Criterion c(8, "jittered E[Lp^p] below d^{p/2}/N^{p/2+p/(2d)}");
    for (double p : {1.0, 3.0}) {
        for (std::int64_t m : {4, 8}) {
            const std::int64_t n = m * m;
            auto ms = make_moment(Strategy::Stratified, 2, n, MomentTarget::LpPthPower, 5000,
                                  88000 + static_cast<std::uint64_t>(m) +
                                      static_cast<std::uint64_t>(p));
            ms.sampler.partition = PartitionSpec::grid(2, m);
            ms.p = p;
            ms.lp_nodes = 10000;
            auto rep = estimate_moment(ms);
            c.require(rep.bound_id == "cor4.2",
                      "bound id p=" + std::to_string(p) + " N=" + std::to_string(n));
            c.require(rep.bound && rep.estimate + 3.0 * rep.stderr_value <= *rep.bound,
                      "p=" + std::to_string(p) + " N=" + std::to_string(n));
        }
    }
}

void criterion_9() {
    Criterion c(9, "simple-random p=2 moment: explicit bound and -1 slope");
    std::vector<std::pair<double, double>> pairs;
    for (std::int64_t n : {16, 64, 256, 1024}) {
        auto ms = make_moment(Strategy::SimpleRandom, 2, n, MomentTarget::SquaredL2, 2000,
                              99000 + static_cast<std::uint64_t>(n));
        auto rep = estimate_moment(ms);
        double bound = bound_value("cor4.5", 2, n, 2.0, std::nullopt, std::nullopt);
        c.require(rep.estimate <= bound, "bound at N=" + std::to_string(n));
        pairs.push_back({static_cast<double>(n), rep.estimate});
    }
    double slope = fit_rate(pairs).slope;
    c.require(slope >= -1.15 && slope <= -0.85,
              "slope " + std::to_string(slope) + " outside [-1.15,-0.85]");
}

void criterion_10() {
    Criterion c(10, "Hilbert curve: bijectivity, adjacency, locality at dK <= 16");
    for (auto [d, k] : {std::pair{2, 8}, std::pair{3, 5}, std::pair{4, 4}, std::pair{5, 3}}) {
        HilbertParams params{d, k};
        const std::uint64_t cells = 1ULL << (d * k);
        std::vector<std::uint32_t> lo(cells * static_cast<std::uint64_t>(d));
        std::vector<std::uint32_t> hi(cells * static_cast<std::uint64_t>(d));
        std::vector<std::uint32_t> prev;
        bool bijective = true, adjacent = true;
        for (std::uint64_t idx = 0; idx < cells; ++idx) {
            auto axes = hilbert_axes(params, idx);
            if (hilbert_index(params, axes) != idx) bijective = false;
            if (idx > 0) {
                int moved = 0;
                bool unit = true;
                for (int i = 0; i < d; ++i) {
                    auto delta = axes[static_cast<std::size_t>(i)] > prev[static_cast<std::size_t>(i)]
                                     ? axes[static_cast<std::size_t>(i)] - prev[static_cast<std::size_t>(i)]
                                     : prev[static_cast<std::size_t>(i)] - axes[static_cast<std::size_t>(i)];
                    if (delta == 1) ++moved;
                    else if (delta != 0) unit = false;
                }
                if (!(unit && moved == 1)) adjacent = false;
            }
            for (int i = 0; i < d; ++i) {
                lo[idx * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(i)] =
                    axes[static_cast<std::size_t>(i)];
                hi[idx * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(i)] =
                    axes[static_cast<std::size_t>(i)];
            }
            prev = std::move(axes);
        }
        c.require(bijective, "bijectivity d=" + std::to_string(d));
        c.require(adjacent, "adjacency d=" + std::to_string(d));

        // bottom-up bounding boxes of every aligned dyadic parameter interval;
        // the bbox diagonal dominates the image diameter
        const double locality = 2.0 * std::sqrt(static_cast<double>(d) + 3.0);
        bool local_ok = true;
        std::uint64_t count = cells;
        int level = d * k;
        while (true) {
            const double len = std::ldexp(1.0, -level);
            const double gate = locality * std::pow(len, 1.0 / d) + 1e-12;
            for (std::uint64_t i = 0; i < count && local_ok; ++i) {
                double sq = 0.0;
                for (int j = 0; j < d; ++j) {
                    double w = static_cast<double>(
                                   hi[i * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j)] -
                                   lo[i * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j)] + 1) *
                               std::ldexp(1.0, -k);
                    sq += w * w;
                }
                if (std::sqrt(sq) > gate) local_ok = false;
            }
            if (level == 0 || !local_ok) break;
            // merge sibling pairs
            for (std::uint64_t i = 0; i < count / 2; ++i) {
                for (int j = 0; j < d; ++j) {
                    auto a = 2 * i * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j);
                    auto b = (2 * i + 1) * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j);
                    auto o = i * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(j);
                    lo[o] = std::min(lo[a], lo[b]);
                    hi[o] = std::max(hi[a], hi[b]);
                }
            }
            count /= 2;
            --level;
        }
        c.require(local_ok, "locality d=" + std::to_string(d) + " K=" + std::to_string(k));
    }
}

std::string run_cli(const std::string& args, int* exit_code) {
    const std::string cmd = std::string(STRATSAMP_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *exit_code = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    *exit_code = pclose(pipe);
    return out;
}

void criterion_11() {
    Criterion c(11, "CLI byte determinism across thread counts");
    const std::string expected =
        "expected --strategy stratified --d 2 --n 16 --m 4 --target squared_l2 --p 2 "
        "--reps 2000 --seed 17 --threads ";
    int rc1 = 0, rc8 = 0;
    std::string one = run_cli(expected + "1", &rc1);
    std::string eight = run_cli(expected + "8", &rc8);
    c.require(rc1 == 0 && rc8 == 0, "expected subcommand exit status");
    c.require(!one.empty() && one == eight, "expected subcommand bytes differ");

    const std::string rate =
        "rate --strategy simple_random --d 2 --n 16,64,256 --target squared_l2 "
        "--reps 500 --seed 4 --threads ";
    std::string r1 = run_cli(rate + "1", &rc1);
    std::string r8 = run_cli(rate + "8", &rc8);
    c.require(rc1 == 0 && rc8 == 0, "rate subcommand exit status");
    c.require(!r1.empty() && r1 == r8, "rate subcommand bytes differ");

    const std::string sample = "sample --strategy lhs --d 2 --n 8 --seed 12 --rep 3";
    std::string s1 = run_cli(sample, &rc1);
    std::string s2 = run_cli(sample, &rc8);
    c.require(rc1 == 0 && rc8 == 0, "sample subcommand exit status");
    c.require(!s1.empty() && s1 == s2, "sample subcommand bytes differ");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
