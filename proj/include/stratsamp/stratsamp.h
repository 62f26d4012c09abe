/* C API for the stratified-sampling / discrepancy library.
 *
 * All functions return ss_status; outputs are written through pointers.
 * Point sets are opaque handles owned by the caller until ss_pointset_free.
 * ss_last_error() returns a thread-local message for the most recent failure.
 */
#ifndef STRATSAMP_H
#define STRATSAMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SS_API __declspec(dllexport)
#else
#define SS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
    SS_OK = 0,
    SS_ERR_INVALID_ARGUMENT = 1,
    SS_ERR_DIMENSION_MISMATCH = 2,
    SS_ERR_SIZE_LIMIT = 3,
    SS_ERR_IO = 4,
    SS_ERR_INTERNAL = 5
} ss_status;

typedef struct ss_pointset ss_pointset;

SS_API const char* ss_last_error(void);

/* Sampling. spec_json example:
 *   {"strategy":"stratified","d":2,"n":16,
 *    "partition":{"d":2,"kind":"grid","m":4}}
 * Strategies: simple_random, stratified, lhs, hsfc.
 * Partition kinds: grid (m), rect_grid (m = [m_1..m_d]), hsfc (n, depth),
 * trivial (n). Identical (spec, seed, replication) give identical points. */
SS_API ss_status ss_sample(const char* spec_json, uint64_t seed, uint64_t replication,
                           ss_pointset** out);

SS_API ss_status ss_pointset_create(int32_t d, const double* coords, int64_t count,
                                    ss_pointset** out);
SS_API ss_status ss_pointset_read(const char* path, ss_pointset** out);
SS_API ss_status ss_pointset_write(const ss_pointset* ps, const char* path);
SS_API ss_status ss_pointset_dim(const ss_pointset* ps, int32_t* d);
SS_API ss_status ss_pointset_size(const ss_pointset* ps, int64_t* n);
/* buffer must hold d*n doubles, row-major */
SS_API ss_status ss_pointset_coords(const ss_pointset* ps, double* buffer, int64_t capacity);
SS_API void ss_pointset_free(ss_pointset* ps);

/* Discrepancy functionals */
SS_API ss_status ss_local_discrepancy(const ss_pointset* ps, const double* z, int32_t d,
                                      double* value);
SS_API ss_status ss_l2_exact(const ss_pointset* ps, double* value);
SS_API ss_status ss_lp_estimate(const ss_pointset* ps, double p, int64_t nodes, uint64_t seed,
                                double* value, double* stderr_pp);
SS_API ss_status ss_star_exact(const ss_pointset* ps, double* value);

/* Worst-case integration error of the normalized representer; equals the L2
 * discrepancy up to roundoff. */
SS_API ss_status ss_worst_case_error(const ss_pointset* ps, double* wce, double* l2);

/* Theoretical bound table. theorem_id in {thm3.3, cor3.4, cor3.5, thm3.6,
 * cor3.8, thm4.1, cor4.2, cor4.3, cor4.5}. partition_json may be NULL when the
 * theorem does not need c2(d); c is the variance constant for thm3.6 (pass NaN
 * when unused). */
SS_API ss_status ss_bound(const char* theorem_id, int32_t d, int64_t n, double p,
                          const char* partition_json, double c, double* value);

/* Replication experiment. spec_json example:
 *   {"sampler":{"strategy":"stratified","d":2,"n":16,
 *               "partition":{"d":2,"kind":"grid","m":4}},
 *    "p":2,"target":"squared_l2","reps":10000,"seed":1,"threads":4}
 * Targets: lp_discrepancy_pth_power, squared_l2, mse_integration,
 * variance_of_mean (the latter two take "integrand":"f1|f2|f3").
 * *report_json receives a malloc'd JSON object; free with ss_string_free. */
SS_API ss_status ss_estimate_moment(const char* spec_json, char** report_json);

SS_API ss_status ss_fit_rate(const double* n_values, const double* estimates, int32_t count,
                             double* slope, double* intercept, double* r_squared);

SS_API void ss_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* STRATSAMP_H */
