#include "stratsamp/stratsamp.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "discrepancy.hpp"
#include "experiments.hpp"
#include "rkhs.hpp"
#include "sampling.hpp"

using nlohmann::json;

namespace stratsamp {

PartitionSpec partition_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    int d = j.at("d").get<int>();
    if (kind == "grid") return PartitionSpec::grid(d, j.at("m").get<std::int64_t>());
    if (kind == "rect_grid") {
        auto m = j.at("m").get<std::vector<std::int64_t>>();
        if (static_cast<int>(m.size()) != d)
            throw std::invalid_argument("rect_grid: m must list one side count per axis");
        return PartitionSpec::rect_grid(std::move(m));
    }
    if (kind == "hsfc")
        return PartitionSpec::hsfc(d, j.at("n").get<std::int64_t>(), j.value("depth", 0));
    if (kind == "trivial") return PartitionSpec::trivial(d, j.at("n").get<std::int64_t>());
    throw std::invalid_argument("unknown partition kind: " + kind);
}

SamplerSpec sampler_from_json(const json& j) {
    SamplerSpec s;
    s.strategy = strategy_from_name(j.at("strategy").get<std::string>());
    s.d = j.at("d").get<int>();
    s.n = j.at("n").get<std::int64_t>();
    if (j.contains("partition")) s.partition = partition_from_json(j.at("partition"));
    if (s.strategy == Strategy::Hsfc) {
        s.hsfc_depth = j.value("depth", 0);
        if (!s.partition) s.partition = PartitionSpec::hsfc(s.d, s.n, s.hsfc_depth);
    }
    s.validate();
    return s;
}

MomentSpec moment_from_json(const json& j) {
    MomentSpec m;
    m.sampler = sampler_from_json(j.at("sampler"));
    m.target = target_from_name(j.at("target").get<std::string>());
    m.p = j.value("p", 2.0);
    m.integrand_id = j.value("integrand", std::string{});
    m.reps = j.at("reps").get<std::int64_t>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.lp_nodes = j.value("nodes", std::int64_t{10000});
    m.threads = j.value("threads", 1);
    m.validate();
    return m;
}

json report_to_json(const MomentSpec& spec, const MomentReport& r) {
    json j;
    j["estimate"] = r.estimate;
    j["stderr"] = r.stderr_value;
    if (r.bound) {
        j["bound"] = *r.bound;
        j["bound_id"] = r.bound_id;
        j["margin"] = r.margin ? json(*r.margin) : json();
    } else {
        j["bound"] = nullptr;
        j["bound_id"] = nullptr;
        j["margin"] = nullptr;
    }
    j["reps"] = r.reps;
    j["target"] = target_name(spec.target);
    j["strategy"] = strategy_name(spec.sampler.strategy);
    return j;
}

}  // namespace stratsamp

namespace {

thread_local std::string g_last_error;

ss_status fail(ss_status code, const char* what) {
    g_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
ss_status guarded(Fn&& fn) {
    try {
        fn();
        return SS_OK;
    } catch (const stratsamp::SizeLimitError& e) {
        return fail(SS_ERR_SIZE_LIMIT, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(SS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(SS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        return fail(SS_ERR_IO, e.what());
    } catch (const std::exception& e) {
        return fail(SS_ERR_INTERNAL, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct ss_pointset {
    stratsamp::PointSet points;
};

extern "C" {

const char* ss_last_error(void) { return g_last_error.c_str(); }

ss_status ss_sample(const char* spec_json, uint64_t seed, uint64_t replication,
                    ss_pointset** out) {
    if (!spec_json || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto spec = stratsamp::sampler_from_json(json::parse(spec_json));
        stratsamp::RngStream stream(seed, replication);
        *out = new ss_pointset{stratsamp::sample(spec, stream)};
    });
}

ss_status ss_pointset_create(int32_t d, const double* coords, int64_t count, ss_pointset** out) {
    if (!coords || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<double> c(coords, coords + count);
        *out = new ss_pointset{stratsamp::PointSet(d, std::move(c))};
    });
}

ss_status ss_pointset_read(const char* path, ss_pointset** out) {
    if (!path || !out) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *out = new ss_pointset{stratsamp::read_points_file(path)}; });
}

ss_status ss_pointset_write(const ss_pointset* ps, const char* path) {
    if (!ps || !path) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { stratsamp::write_points_file(path, ps->points); });
}

ss_status ss_pointset_dim(const ss_pointset* ps, int32_t* d) {
    if (!ps || !d) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    *d = ps->points.dim();
    return SS_OK;
}

ss_status ss_pointset_size(const ss_pointset* ps, int64_t* n) {
    if (!ps || !n) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    *n = static_cast<int64_t>(ps->points.size());
    return SS_OK;
}

ss_status ss_pointset_coords(const ss_pointset* ps, double* buffer, int64_t capacity) {
    if (!ps || !buffer) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    const auto& c = ps->points.coords();
    if (capacity < static_cast<int64_t>(c.size()))
        return fail(SS_ERR_INVALID_ARGUMENT, "buffer too small");
    std::memcpy(buffer, c.data(), c.size() * sizeof(double));
    return SS_OK;
}

void ss_pointset_free(ss_pointset* ps) { delete ps; }

ss_status ss_local_discrepancy(const ss_pointset* ps, const double* z, int32_t d, double* value) {
    if (!ps || !z || !value) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    if (d != ps->points.dim())
        return fail(SS_ERR_DIMENSION_MISMATCH, "local_discrepancy: dimension mismatch");
    return guarded([&] {
        stratsamp::Point zz(z, z + d);
        *value = stratsamp::local_discrepancy(ps->points, zz);
    });
}

ss_status ss_l2_exact(const ss_pointset* ps, double* value) {
    if (!ps || !value) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *value = stratsamp::l2_exact(ps->points).value; });
}

ss_status ss_lp_estimate(const ss_pointset* ps, double p, int64_t nodes, uint64_t seed,
                         double* value, double* stderr_pp) {
    if (!ps || !value) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        stratsamp::RngStream stream(seed, 0);
        auto e = stratsamp::lp_estimate(ps->points, p, nodes, stream);
        *value = e.value;
        if (stderr_pp) *stderr_pp = *e.stderr_pp;
    });
}

ss_status ss_star_exact(const ss_pointset* ps, double* value) {
    if (!ps || !value) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { *value = stratsamp::star_exact_small(ps->points).value; });
}

ss_status ss_worst_case_error(const ss_pointset* ps, double* wce, double* l2) {
    if (!ps || !wce || !l2) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto r = stratsamp::worst_case_error_identity(ps->points);
        *wce = r.wce;
        *l2 = r.l2;
    });
}

ss_status ss_bound(const char* theorem_id, int32_t d, int64_t n, double p,
                   const char* partition_json, double c, double* value) {
    if (!theorem_id || !value) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::optional<stratsamp::PartitionSpec> part;
        if (partition_json)
            part = stratsamp::partition_from_json(json::parse(partition_json));
        std::optional<double> cc;
        if (!std::isnan(c)) cc = c;
        *value = stratsamp::bound_value(theorem_id, d, n, p, part, cc);
    });
}

ss_status ss_estimate_moment(const char* spec_json, char** report_json) {
    if (!spec_json || !report_json) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        auto spec = stratsamp::moment_from_json(json::parse(spec_json));
        auto report = stratsamp::estimate_moment(spec);
        std::string out = stratsamp::report_to_json(spec, report).dump();
        *report_json = dup_string(out);
        if (!*report_json) throw std::bad_alloc();
    });
}

ss_status ss_fit_rate(const double* n_values, const double* estimates, int32_t count,
                      double* slope, double* intercept, double* r_squared) {
    if (!n_values || !estimates || !slope) return fail(SS_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(count);
        for (int32_t i = 0; i < count; ++i) pairs.emplace_back(n_values[i], estimates[i]);
        auto fit = stratsamp::fit_rate(pairs);
        *slope = fit.slope;
        if (intercept) *intercept = fit.intercept;
        if (r_squared) *r_squared = fit.r_squared;
    });
}

void ss_string_free(char* s) { delete[] s; }

}  // extern "C"
