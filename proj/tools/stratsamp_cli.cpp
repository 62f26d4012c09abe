// Experiment CLI. Talks to the library exclusively through the C API.
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stratsamp/stratsamp.h"

using nlohmann::json;

namespace {

constexpr int kExitGuard = 1;
constexpr int kExitUsage = 2;

int exit_code_for(ss_status st) {
    switch (st) {
        case SS_OK: return 0;
        case SS_ERR_INVALID_ARGUMENT:
        case SS_ERR_DIMENSION_MISMATCH: return kExitUsage;
        default: return kExitGuard;
    }
}

[[noreturn]] void die(ss_status st) {
    std::cerr << "error: " << ss_last_error() << "\n";
    std::exit(exit_code_for(st));
}

void check(ss_status st) {
    if (st != SS_OK) die(st);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<int64_t> parse_int_list(const std::string& s) {
    std::vector<int64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw CLI::ValidationError("empty integer list");
    return out;
}

struct SamplerArgs {
    std::string strategy;
    int d = 0;
    int64_t n = 0;
    std::string m;       // "4" or "2,3" for grid strata
    int base_depth = 0;  // hsfc curve depth

    void attach(CLI::App* cmd) {
        cmd->add_option("--strategy", strategy, "simple_random|stratified|lhs|hsfc")->required();
        cmd->add_option("--d", d, "dimension")->required();
        cmd->add_option("--n", n, "point count")->required();
        cmd->add_option("--m", m, "grid strata per axis, single value or comma list");
        cmd->add_option("--base-depth", base_depth, "Hilbert curve recursion depth");
    }

    json to_json() const {
        json j{{"strategy", strategy}, {"d", d}, {"n", n}};
        if (strategy == "stratified") {
            json part;
            if (m.empty()) {
                part = {{"d", d}, {"kind", "trivial"}, {"n", n}};
            } else {
                auto sides = parse_int_list(m);
                if (sides.size() == 1)
                    part = {{"d", d}, {"kind", "grid"}, {"m", sides[0]}};
                else
                    part = {{"d", d}, {"kind", "rect_grid"}, {"m", sides}};
            }
            j["partition"] = part;
        } else if (strategy == "hsfc") {
            j["partition"] = {{"d", d}, {"kind", "hsfc"}, {"n", n}, {"depth", base_depth}};
            j["depth"] = base_depth;
        }
        return j;
    }
};

json moment_report(const json& sampler, double p, const std::string& target,
                   const std::string& integrand, int64_t reps, uint64_t seed, int64_t nodes,
                   int threads) {
    json spec{{"sampler", sampler}, {"p", p},       {"target", target}, {"reps", reps},
              {"seed", seed},       {"nodes", nodes}, {"threads", threads}};
    if (!integrand.empty()) spec["integrand"] = integrand;
    char* out = nullptr;
    check(ss_estimate_moment(spec.dump().c_str(), &out));
    json report = json::parse(out);
    ss_string_free(out);
    return report;
}

std::string csv_row(const std::string& strategy, int d, int64_t n, double p,
                    const std::string& target, int64_t reps, uint64_t seed, const json& report) {
    std::ostringstream row;
    row << strategy << ',' << d << ',' << n << ',' << fmt17(p) << ',' << target << ',' << reps
        << ',' << seed << ',' << fmt17(report.at("estimate").get<double>()) << ','
        << fmt17(report.at("stderr").get<double>()) << ',';
    if (!report.at("bound").is_null()) row << fmt17(report.at("bound").get<double>());
    row << ',';
    if (!report.at("bound_id").is_null()) row << report.at("bound_id").get<std::string>();
    row << ',';
    if (!report.at("margin").is_null()) row << fmt17(report.at("margin").get<double>());
    return row.str();
}

constexpr const char* kCsvHeader =
    "strategy,d,N,p,target,reps,seed,estimate,stderr,bound,bound_id,margin";

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stratified sampling and discrepancy experiments"};
    app.require_subcommand(1);

    // sample
    auto* cmd_sample = app.add_subcommand("sample", "draw a point set and write a point file");
    SamplerArgs sargs;
    sargs.attach(cmd_sample);
    uint64_t seed = 0;
    uint64_t replication = 0;
    std::string out_file;
    cmd_sample->add_option("--seed", seed, "random seed")->required();
    cmd_sample->add_option("--rep", replication, "replication index");
    cmd_sample->add_option("--out", out_file, "output point file (default stdout)");

    // discrepancy
    auto* cmd_disc = app.add_subcommand("discrepancy", "discrepancy of a point file");
    std::string in_file, p_arg = "2";
    int64_t nodes = 10000;
    uint64_t disc_seed = 0;
    cmd_disc->add_option("--in", in_file, "input point file")->required();
    cmd_disc->add_option("--p", p_arg, "2 (exact), a real p >= 1 (Monte Carlo), or star");
    cmd_disc->add_option("--nodes", nodes, "Monte Carlo node count");
    cmd_disc->add_option("--seed", disc_seed, "Monte Carlo seed");

    // expected
    auto* cmd_exp = app.add_subcommand("expected", "replicated moment estimate vs bound");
    SamplerArgs eargs;
    eargs.attach(cmd_exp);
    double p = 2.0;
    std::string target = "squared_l2", integrand;
    int64_t reps = 0;
    uint64_t exp_seed = 0;
    int64_t exp_nodes = 10000;
    int threads = 1;
    cmd_exp->add_option("--p", p, "moment exponent");
    cmd_exp->add_option("--target", target,
                        "lp_discrepancy_pth_power|squared_l2|mse_integration|variance_of_mean")
        ->required();
    cmd_exp->add_option("--integrand", integrand, "f1|f2|f3");
    cmd_exp->add_option("--reps", reps, "replication count")->required();
    cmd_exp->add_option("--seed", exp_seed, "random seed")->required();
    cmd_exp->add_option("--nodes", exp_nodes, "L_p Monte Carlo node count");
    cmd_exp->add_option("--threads", threads, "worker threads");

    // rate
    auto* cmd_rate = app.add_subcommand("rate", "estimate across an N sweep and fit the slope");
    std::string rate_strategy, rate_m, rate_ns, rate_target = "squared_l2", rate_integrand;
    int rate_d = 0, rate_threads = 1, rate_depth = 0;
    double rate_p = 2.0;
    int64_t rate_reps = 0, rate_nodes = 10000;
    uint64_t rate_seed = 0;
    cmd_rate->add_option("--strategy", rate_strategy, "sampling strategy")->required();
    cmd_rate->add_option("--d", rate_d, "dimension")->required();
    cmd_rate->add_option("--n", rate_ns, "comma-separated N sweep")->required();
    cmd_rate->add_option("--p", rate_p, "moment exponent");
    cmd_rate->add_option("--target", rate_target, "moment target")->required();
    cmd_rate->add_option("--integrand", rate_integrand, "f1|f2|f3");
    cmd_rate->add_option("--reps", rate_reps, "replication count")->required();
    cmd_rate->add_option("--seed", rate_seed, "random seed")->required();
    cmd_rate->add_option("--nodes", rate_nodes, "L_p Monte Carlo node count");
    cmd_rate->add_option("--threads", rate_threads, "worker threads");
    cmd_rate->add_option("--base-depth", rate_depth, "Hilbert curve recursion depth");

    // bounds
    auto* cmd_bounds = app.add_subcommand("bounds", "closed-form theoretical bound");
    std::string theorem, bounds_m;
    int bounds_d = 0;
    int64_t bounds_n = 0;
    double bounds_p = 2.0, bounds_c = std::nan("");
    cmd_bounds->add_option("--theorem", theorem, "thm3.3|cor3.4|cor3.5|thm3.6|cor3.8|thm4.1|cor4.2|cor4.3|cor4.5")
        ->required();
    cmd_bounds->add_option("--d", bounds_d, "dimension")->required();
    cmd_bounds->add_option("--n", bounds_n, "point count")->required();
    cmd_bounds->add_option("--p", bounds_p, "moment exponent");
    cmd_bounds->add_option("--c", bounds_c, "variance constant (thm3.6)");
    cmd_bounds->add_option("--m", bounds_m, "grid strata, for theorems needing c2(d)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*cmd_sample) {
            ss_pointset* ps = nullptr;
            check(ss_sample(sargs.to_json().dump().c_str(), seed, replication, &ps));
            if (out_file.empty()) {
                int32_t d = 0;
                int64_t n = 0;
                ss_pointset_dim(ps, &d);
                ss_pointset_size(ps, &n);
                std::vector<double> coords(static_cast<size_t>(d) * n);
                check(ss_pointset_coords(ps, coords.data(), static_cast<int64_t>(coords.size())));
                std::cout << d << ' ' << n << '\n';
                for (int64_t i = 0; i < n; ++i) {
                    for (int32_t k = 0; k < d; ++k)
                        std::cout << (k ? " " : "") << fmt17(coords[i * d + k]);
                    std::cout << '\n';
                }
            } else {
                check(ss_pointset_write(ps, out_file.c_str()));
            }
            ss_pointset_free(ps);
        } else if (*cmd_disc) {
            ss_pointset* ps = nullptr;
            check(ss_pointset_read(in_file.c_str(), &ps));
            json out;
            if (p_arg == "star") {
                double v = 0.0;
                check(ss_star_exact(ps, &v));
                out = {{"p", "star"}, {"value", v}};
            } else if (p_arg == "2") {
                double v = 0.0;
                check(ss_l2_exact(ps, &v));
                out = {{"p", 2.0}, {"value", v}};
            } else {
                double pv = std::stod(p_arg), v = 0.0, se = 0.0;
                check(ss_lp_estimate(ps, pv, nodes, disc_seed, &v, &se));
                out = {{"p", pv}, {"value", v}, {"stderr", se}, {"nodes", nodes}};
            }
            ss_pointset_free(ps);
            std::cout << out.dump() << '\n';
        } else if (*cmd_exp) {
            json report = moment_report(eargs.to_json(), p, target, integrand, reps, exp_seed,
                                        exp_nodes, threads);
            std::cout << report.dump() << '\n';
            std::cout << kCsvHeader << '\n'
                      << csv_row(eargs.strategy, eargs.d, eargs.n, p, target, reps, exp_seed,
                                 report)
                      << '\n';
        } else if (*cmd_rate) {
            auto sweep = parse_int_list(rate_ns);
            std::vector<double> ns, estimates;
            std::cout << kCsvHeader << '\n';
            for (int64_t n : sweep) {
                SamplerArgs a;
                a.strategy = rate_strategy;
                a.d = rate_d;
                a.n = n;
                a.base_depth = rate_depth;
                if (rate_strategy == "stratified") {
                    // isometric grid per N; require N = m^d
                    auto m = static_cast<int64_t>(std::llround(std::pow(
                        static_cast<double>(n), 1.0 / rate_d)));
                    int64_t check_n = 1;
                    for (int i = 0; i < rate_d; ++i) check_n *= m;
                    if (check_n != n) {
                        std::cerr << "error: N=" << n << " is not a d-th power for grid strata\n";
                        return kExitUsage;
                    }
                    a.m = std::to_string(m);
                }
                json report = moment_report(a.to_json(), rate_p, rate_target, rate_integrand,
                                            rate_reps, rate_seed, rate_nodes, rate_threads);
                std::cout << csv_row(rate_strategy, rate_d, n, rate_p, rate_target, rate_reps,
                                     rate_seed, report)
                          << '\n';
                ns.push_back(static_cast<double>(n));
                estimates.push_back(report.at("estimate").get<double>());
            }
            double slope = 0, intercept = 0, r2 = 0;
            check(ss_fit_rate(ns.data(), estimates.data(), static_cast<int32_t>(ns.size()),
                              &slope, &intercept, &r2));
            json fit{{"slope", slope}, {"intercept", intercept}, {"r_squared", r2}};
            std::cout << fit.dump() << '\n';
        } else if (*cmd_bounds) {
            std::string part_json;
            if (!bounds_m.empty()) {
                auto sides = parse_int_list(bounds_m);
                json part = sides.size() == 1
                                ? json{{"d", bounds_d}, {"kind", "grid"}, {"m", sides[0]}}
                                : json{{"d", bounds_d}, {"kind", "rect_grid"}, {"m", sides}};
                part_json = part.dump();
            }
            double v = 0.0;
            check(ss_bound(theorem.c_str(), bounds_d, bounds_n, bounds_p,
                           part_json.empty() ? nullptr : part_json.c_str(), bounds_c, &v));
            std::cout << fmt17(v) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
