#ifndef SANTALO_LAB_H
#define SANTALO_LAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SL_API __declspec(dllexport)
#else
#define SL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Codes 1..17 mirror the library's error categories one to one. */
typedef enum sl_status {
  SL_OK = 0,
  SL_INVALID_ARGUMENT = 1,
  SL_DEGENERATE_INPUT = 2,
  SL_EMPTY_SECTION = 3,
  SL_OUTSIDE_PROJECTION = 4,
  SL_SINGULAR_MAP = 5,
  SL_CENTER_NOT_INTERIOR = 6,
  SL_LINE_MISSES_BODY = 7,
  SL_BRACKET_FAILURE = 8,
  SL_MAX_ITERATIONS = 9,
  SL_DEGENERATE_AT = 10,
  SL_DEGENERATE_MAP = 11,
  SL_INSUFFICIENT_GRID = 12,
  SL_TOO_MANY_VERTICES = 13,
  SL_GEOMETRY_INCONSISTENT = 14,
  SL_NOT_IN_CONE = 15,
  SL_UNSUPPORTED_DIMENSION = 16,
  SL_LP_UNBOUNDED = 17,
  SL_PARSE_ERROR = 100,
  SL_INTERNAL_ERROR = 101
} sl_status;

typedef struct sl_polytope sl_polytope;
typedef struct sl_system sl_system;

typedef struct sl_tolerances {
  double geom;
  double sant;
  double conv;
  double ratio;
  double vol;
} sl_tolerances;

/* Receives one complete line (no trailing newline) of streamed output. */
typedef void (*sl_line_callback)(const char* line, void* user);

SL_API sl_tolerances sl_default_tolerances(void);
SL_API const char* sl_status_name(sl_status status);
/* Message of the last failure on the calling thread; "" after a success. */
SL_API const char* sl_last_error(void);
/* Frees strings returned through char** out-parameters. */
SL_API void sl_string_free(char* s);

/* Polytopes. JSON: {"vertices": [[x, ...], ...]} ("points" is accepted too). */
SL_API sl_status sl_polytope_from_points(int dim, size_t count, const double* coords,
                                         const sl_tolerances* tol, sl_polytope** out);
SL_API sl_status sl_polytope_from_json(const char* json, const sl_tolerances* tol,
                                       sl_polytope** out);
SL_API void sl_polytope_free(sl_polytope* p);
SL_API sl_status sl_polytope_dim(const sl_polytope* p, int* out);
SL_API sl_status sl_polytope_vertex_count(const sl_polytope* p, size_t* out);
/* Copies vertex `index` into out[0..dim). */
SL_API sl_status sl_polytope_vertex(const sl_polytope* p, size_t index, double* out);
SL_API sl_status sl_polytope_volume(const sl_polytope* p, double* out);
SL_API sl_status sl_polytope_to_json(const sl_polytope* p, char** out);

/* Polar body about `center` (NULL: the Santalo point) with |K|, |K^{*z}| and their product. */
SL_API sl_status sl_polar(const sl_polytope* p, const double* center, const sl_tolerances* tol,
                          char** report_json);
SL_API sl_status sl_santalo(const sl_polytope* p, const sl_tolerances* tol, char** report_json);
/* (d+1)^{d+1} / (d!)^2, the volume product of a d-simplex. */
SL_API sl_status sl_simplex_bound(int d, double* out);
SL_API sl_status sl_volume_product(const sl_polytope* p, const sl_tolerances* tol, double* out);
SL_API sl_status sl_classify(const sl_polytope* p, const sl_tolerances* tol, char** report_json);
/* Steiner symmetral about {<normal, x> = offset}, with volumes and products before and after. */
SL_API sl_status sl_symmetrize(const sl_polytope* p, const double* normal, double offset,
                               const sl_tolerances* tol, char** report_json);

/* Shadow systems. JSON forms:
 *   {"points": [[...]], "speeds": [...], "direction": [...], "interval": [lo, hi]}
 *   {"kind": "steiner", "body": {...}, "normal": [...], "offset": b}
 *   {"kind": "affine", "body": {...}, "v": v, "V": [...], "u": u, "interval": [lo, hi]} */
SL_API sl_status sl_system_from_json(const char* json, const sl_tolerances* tol, sl_system** out);
SL_API void sl_system_free(sl_system* s);
SL_API sl_status sl_system_dim(const sl_system* s, int* out);
SL_API sl_status sl_system_interval(const sl_system* s, double* lo, double* hi);
/* Sweep over `grid` equally spaced parameters. CSV header:
 * t,volume,polar_volume,santalo_1..santalo_d,converged
 * *violations (may be NULL) counts failed convexity verdicts. */
SL_API sl_status sl_shadow_sweep(const sl_system* s, int grid, const sl_tolerances* tol,
                                 char** csv, char** verdict_json, int* violations);
/* Slice-profile chain check on the triple (s, (s+t)/2, t); *violations counts broken links. */
SL_API sl_status sl_verify_chain(const sl_system* sys, double s, double t, int grid,
                                 const sl_tolerances* tol, char** report_json, int* violations);

/* Campaigns. k = 0 with d = 2 runs the 3..12-gon campaign. One JSON line per
 * 100 trials goes to `on_line`; the final report is returned. *violations
 * receives the number of violation certificates. */
SL_API sl_status sl_search(int d, int k, int trials, uint64_t seed, sl_line_callback on_line,
                           void* user, char** report_json, int* violations);

#ifdef __cplusplus
}
#endif

#endif
