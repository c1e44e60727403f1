/* Certifying analyzer for competitive Lotka-Volterra systems: C interface.
 *
 * All functions return an lvc_status. On failure, lvc_last_error() gives a
 * message for the calling thread. Strings returned through char** are owned
 * by the caller and released with lvc_string_free. */
#ifndef LVCERT_H
#define LVCERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LVCERT_BUILDING)
#    define LVCERT_API __declspec(dllexport)
#  else
#    define LVCERT_API __declspec(dllimport)
#  endif
#else
#  define LVCERT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvc_status {
  LVC_OK = 0,
  LVC_ERR_INVALID_ARGUMENT = 1,
  LVC_ERR_PARSE = 2,
  LVC_ERR_VALIDATION = 3,
  LVC_ERR_IO = 4,
  LVC_ERR_DIMENSION = 5,
  LVC_ERR_PRECONDITION = 6,
  LVC_ERR_INCONSISTENT = 7,
  LVC_ERR_NUMERIC = 8,
  LVC_ERR_INTERNAL = 9
} lvc_status;

typedef enum lvc_mode {
  LVC_MODE_RATIONAL = 0, /* exact arithmetic */
  LVC_MODE_FLOAT = 1     /* doubles with an absolute comparison tolerance */
} lvc_mode;

typedef enum lvc_variant {
  LVC_VARIANT_ULTIMATE = 0, /* partial persistence tested with the ultimate bound */
  LVC_VARIANT_CAPACITY = 1  /* ... with the carrying-capacity point */
} lvc_variant;

typedef enum lvc_ordering_search {
  LVC_ORDERING_GREEDY = 0,
  LVC_ORDERING_EXHAUSTIVE = 1
} lvc_ordering_search;

typedef struct lvc_system lvc_system;
typedef struct lvc_trajectory lvc_trajectory;

typedef struct lvc_analyze_options {
  lvc_variant variant;
  lvc_ordering_search ordering;
} lvc_analyze_options;

typedef struct lvc_verify_options {
  size_t samples;
  uint64_t seed;
  double t_end;
  double dt;
  size_t stride;
  double tol;
  /* Test hook: corrupt the verdict before checking it. */
  int inject_fault;
} lvc_verify_options;

LVCERT_API const char* lvc_version(void);
/* Message of the last failed call on this thread ("" if none). */
LVCERT_API const char* lvc_last_error(void);

LVCERT_API void lvc_analyze_options_init(lvc_analyze_options* opts);
LVCERT_API void lvc_verify_options_init(lvc_verify_options* opts);

/* eps is the comparison tolerance in float mode; ignored in rational mode. */
LVCERT_API lvc_status lvc_system_from_json(const char* json, lvc_mode mode, double eps, lvc_system** out);
LVCERT_API lvc_status lvc_system_load_file(const char* path, lvc_mode mode, double eps, lvc_system** out);
LVCERT_API void lvc_system_free(lvc_system* sys);
LVCERT_API size_t lvc_system_dim(const lvc_system* sys);
LVCERT_API lvc_mode lvc_system_mode(const lvc_system* sys);
LVCERT_API lvc_status lvc_system_to_json(const lvc_system* sys, char** out_json);

/* Report with keys verdict, certificate, bounds. */
LVCERT_API lvc_status lvc_analyze(const lvc_system* sys, const lvc_analyze_options* opts, char** out_json);
/* Array of equilibria with supports and positions against every nullcline. */
LVCERT_API lvc_status lvc_equilibria(const lvc_system* sys, char** out_json);
/* Analysis followed by simulation. *contradicted is set to 1 when a certified
 * verdict is not reproduced by the simulations or its certificate does not
 * replay; 0 otherwise. */
LVCERT_API lvc_status lvc_verify(const lvc_system* sys, const lvc_analyze_options* aopts,
                                 const lvc_verify_options* vopts, char** out_json, int* contradicted);

/* Writes count * dim doubles into out (row-major). */
LVCERT_API lvc_status lvc_random_starts(const lvc_system* sys, size_t count, uint64_t seed, double* out);
LVCERT_API lvc_status lvc_simulate(const lvc_system* sys, const double* x0, size_t dim, double t_end, double dt,
                                   size_t stride, lvc_trajectory** out);
LVCERT_API size_t lvc_trajectory_length(const lvc_trajectory* traj);
LVCERT_API size_t lvc_trajectory_dim(const lvc_trajectory* traj);
LVCERT_API double lvc_trajectory_time(const lvc_trajectory* traj, size_t k);
/* Pointer to dim doubles, valid until the trajectory is freed. */
LVCERT_API const double* lvc_trajectory_state(const lvc_trajectory* traj, size_t k);
/* CSV with header t,x1,...,xn and 17 significant digits. */
LVCERT_API lvc_status lvc_trajectory_write_csv(const lvc_trajectory* traj, const char* path);
LVCERT_API void lvc_trajectory_free(lvc_trajectory* traj);

LVCERT_API void lvc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LVCERT_H */
