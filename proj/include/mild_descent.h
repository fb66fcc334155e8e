/* C interface to the mild-descent optimal control library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an md_status; on
 * failure md_last_error() describes the problem (thread-local, valid until
 * the next failing call on the same thread). */
#ifndef MILD_DESCENT_H
#define MILD_DESCENT_H

#include <stddef.h>

#if defined(_WIN32)
#  define MD_API __declspec(dllexport)
#else
#  define MD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum md_status {
  MD_OK = 0,
  MD_ERR_INVALID_ARGUMENT = 1,
  MD_ERR_DIMENSION = 2,
  MD_ERR_MISALIGNED = 3,
  MD_ERR_DIVERGENCE = 4,
  MD_ERR_MISSING_FIELD = 5,
  MD_ERR_PARSE = 6,
  MD_ERR_IO = 7,
  MD_ERR_INTERNAL = 99
} md_status;

typedef struct md_config md_config;
typedef struct md_report md_report;
typedef struct md_control md_control;
typedef struct md_verify_table md_verify_table;

MD_API const char* md_version(void);
MD_API const char* md_last_error(void);
/* Stable identifier of a status code, e.g. "invalid_argument". */
MD_API const char* md_status_name(md_status status);

/* Benchmark configuration; md_config_create yields the published defaults. */
MD_API md_status md_config_create(md_config** out);
MD_API md_status md_config_load(const char* path, md_config** out);
MD_API void md_config_destroy(md_config* cfg);
MD_API md_status md_config_set(md_config* cfg, const char* key, const char* value);
/* Writes the textual value of `key` into buf (always NUL-terminated). */
MD_API md_status md_config_get(const md_config* cfg, const char* key, char* buf, size_t buf_len);
/* Notices produced while loading (e.g. keys that fell back to defaults). */
MD_API size_t md_config_notice_count(const md_config* cfg);
MD_API const char* md_config_notice(const md_config* cfg, size_t index);

/* Runs the sample-and-hold descent from u = 0. threads = 0 runs probes serially. */
MD_API md_status md_reproduce(const md_config* cfg, unsigned threads, md_report** out);
MD_API void md_report_destroy(md_report* report);
/* Number of recorded costs (iterations + 1). */
MD_API size_t md_report_cost_count(const md_report* report);
MD_API md_status md_report_cost(const md_report* report, size_t index, double* out);
MD_API md_status md_report_relative_mismatch(const md_report* report, size_t index, double* out);
MD_API size_t md_report_rejections(const md_report* report);
MD_API const char* md_report_stop_reason(const md_report* report);
/* Writes CSV artifacts and manifest.txt into dir. */
MD_API md_status md_report_write_artifacts(const md_report* report, const char* dir);

MD_API md_status md_control_load(const char* path, md_control** out);
MD_API void md_control_destroy(md_control* control);
MD_API size_t md_control_pieces(const md_control* control);
MD_API size_t md_control_channels(const md_control* control);

/* Exact-increment estimate I[u] - I[ubar] on the configured benchmark, plus
 * the direct cost difference for comparison (either output may be NULL). */
MD_API md_status md_exact_increment(const md_config* cfg, const md_control* ubar,
                                    const md_control* u, unsigned threads, double* increment,
                                    double* direct);

MD_API md_status md_verify(const md_config* cfg, unsigned threads, md_verify_table** out);
MD_API void md_verify_destroy(md_verify_table* table);
MD_API size_t md_verify_rows(const md_verify_table* table);
MD_API md_status md_verify_row(const md_verify_table* table, size_t index, const char** name,
                               double* value, double* target, double* tolerance, int* passed);

/* Probe worker cap from MILD_DESCENT_THREADS (unset: hardware concurrency). */
MD_API md_status md_threads_from_env(unsigned* out);

#ifdef __cplusplus
}
#endif

#endif /* MILD_DESCENT_H */
