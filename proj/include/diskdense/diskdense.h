/* C interface to the diskdense library. All objects are opaque handles
 * created and destroyed through this header. Functions return a dd_status;
 * on failure dd_last_error() describes the problem (per thread). Strings
 * returned through char** are owned by the caller and released with
 * dd_string_free(). */
#ifndef DISKDENSE_H
#define DISKDENSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(DISKDENSE_BUILDING)
#define DD_API __attribute__((visibility("default")))
#else
#define DD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dd_status {
  DD_OK = 0,
  DD_ERR_INVALID_ARGUMENT = 1, /* parameter outside its domain, null handle */
  DD_ERR_IO = 2,               /* unreadable or unwritable file */
  DD_ERR_PARSE = 3,            /* malformed instance text */
  DD_ERR_OUT_OF_RANGE = 4,     /* index or id past the end */
  DD_ERR_RUNTIME = 5           /* anything else */
} dd_status;

typedef struct dd_instance dd_instance;
typedef struct dd_pairs dd_pairs;
typedef struct dd_result dd_result;
typedef struct dd_tree dd_tree;

typedef struct dd_disk {
  uint32_t id;
  double cx;
  double cy;
  double r;
} dd_disk;

DD_API const char* dd_version(void);
DD_API const char* dd_last_error(void);
DD_API const char* dd_status_name(dd_status status);
DD_API void dd_string_free(char* s);

/* Geometry */
DD_API dd_status dd_intersects(const dd_disk* a, const dd_disk* b, int* out);

/* Instances. Disks may be given in any order; ids must be 0..n-1. */
DD_API dd_status dd_instance_from_disks(const char* name, const dd_disk* disks,
                                        size_t n, dd_instance** out);
DD_API dd_status dd_instance_read(const char* path, dd_instance** out);
DD_API dd_status dd_instance_parse(const char* text, const char* name,
                                   dd_instance** out);
DD_API dd_status dd_instance_write(const dd_instance* inst, const char* path);
DD_API dd_status dd_instance_format(const dd_instance* inst, char** out);
DD_API size_t dd_instance_size(const dd_instance* inst);
DD_API const char* dd_instance_name(const dd_instance* inst);
DD_API dd_status dd_instance_get_disk(const dd_instance* inst, size_t i,
                                      dd_disk* out);
DD_API void dd_instance_destroy(dd_instance* inst);

typedef enum dd_generator_kind {
  DD_GEN_UNIFORM = 0,
  DD_GEN_CLUSTERED = 1,
  DD_GEN_CLIQUE = 2
} dd_generator_kind;

typedef struct dd_generate_params {
  dd_generator_kind kind;
  size_t n;
  uint64_t seed;
  double side;
  double rmin;
  double rmax;
  size_t clusters;
  double spread;
  double radius;
} dd_generate_params;

DD_API void dd_generate_params_init(dd_generate_params* p);
DD_API dd_status dd_generator_kind_parse(const char* name, dd_generator_kind* out);
DD_API dd_status dd_instance_generate(const dd_generate_params* p,
                                      dd_instance** out);

/* Intersecting pairs, sorted, u < v. */
DD_API dd_status dd_pairs_compute(const dd_instance* inst, int naive,
                                  dd_pairs** out);
DD_API size_t dd_pairs_size(const dd_pairs* pairs);
DD_API dd_status dd_pairs_get(const dd_pairs* pairs, size_t i, uint32_t* u,
                              uint32_t* v);
DD_API void dd_pairs_destroy(dd_pairs* pairs);

/* Densest subset solvers. */
DD_API dd_status dd_exact(const dd_instance* inst, size_t max_n, dd_result** out);
DD_API dd_status dd_brute(const dd_instance* inst, dd_result** out);
DD_API dd_status dd_peel(const dd_instance* inst, dd_result** out);

typedef struct dd_approx2_params {
  double eps;
  double c;
  uint64_t seed;
  int report_exact;
} dd_approx2_params;

DD_API void dd_approx2_params_init(dd_approx2_params* p);
DD_API dd_status dd_approx2(const dd_instance* inst, const dd_approx2_params* p,
                            dd_result** out);

typedef struct dd_approx1_params {
  double eps;
  double c;
  double c_prime;
  double sparse_threshold;
  uint64_t seed;
} dd_approx1_params;

DD_API void dd_approx1_params_init(dd_approx1_params* p);
DD_API dd_status dd_approx1(const dd_instance* inst, const dd_approx1_params* p,
                            dd_result** out);

DD_API size_t dd_result_size(const dd_result* res);
/* Copies min(cap, size) ids into buf. */
DD_API dd_status dd_result_subset(const dd_result* res, uint32_t* buf, size_t cap);
/* exact is set to 0 when only an estimate is available (num/den untouched). */
DD_API dd_status dd_result_density(const dd_result* res, int64_t* num,
                                   int64_t* den, int* exact);
DD_API double dd_result_density_value(const dd_result* res);
DD_API dd_status dd_result_json(const dd_result* res, int include_timings,
                                char** out);
DD_API void dd_result_destroy(dd_result* res);

/* Approximate counting / sampling tree. Queries draw from a stream owned by
 * the tree, seeded from the build seed, so a fixed query sequence replays. */
typedef struct dd_estimate {
  uint64_t estimate;
  int has_sample;
  uint32_t sample;
  unsigned level;
  int exact;
  int fallback;
} dd_estimate;

DD_API dd_status dd_tree_build(const dd_instance* inst, double c, uint64_t seed,
                               dd_tree** out);
DD_API dd_status dd_tree_query(dd_tree* tree, const dd_disk* q, double eps,
                               dd_estimate* out);
DD_API dd_status dd_tree_psi_eps(const dd_tree* tree, double eps, double* out);
DD_API void dd_tree_destroy(dd_tree* tree);

/* Sampler audit; writes a JSON report. queries may be null (evenly spaced
 * default queries). */
typedef struct dd_audit_params {
  double eps;
  double c;
  size_t draws;
  uint64_t seed;
  const uint32_t* queries;
  size_t num_queries;
} dd_audit_params;

DD_API void dd_audit_params_init(dd_audit_params* p);
DD_API dd_status dd_audit_sampler(const dd_instance* inst, const dd_audit_params* p,
                                  char** json_out);

/* Reporting query against an index over the whole instance; writes JSON
 * {"overflow", "count", "ids"}. limit = SIZE_MAX means no limit. */
DD_API dd_status dd_probe(const dd_instance* inst, const dd_disk* q, size_t limit,
                          char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* DISKDENSE_H */
