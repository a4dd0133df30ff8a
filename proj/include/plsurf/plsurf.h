/* C interface to the plsurf library. All strings are UTF-8. Strings
 * returned through `char**` are owned by the caller and released with
 * plsurf_string_free. Functions return PLSURF_OK or an error code; the
 * message of the last error on the calling thread is available from
 * plsurf_last_error. */
#ifndef PLSURF_H
#define PLSURF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PLSURF_API __declspec(dllexport)
#else
#define PLSURF_API __attribute__((visibility("default")))
#endif

enum plsurf_status {
  PLSURF_OK = 0,
  /* input errors */
  PLSURF_E_INVALID_INPUT = 100,
  PLSURF_E_SYNTAX,
  PLSURF_E_SCHEMA,
  PLSURF_E_DUPLICATE_ID,
  PLSURF_E_BROKEN_FACE_CYCLE,
  PLSURF_E_NON_MANIFOLD_EDGE,
  PLSURF_E_PINCHED_VERTEX,
  PLSURF_E_DANGLING_EDGE,
  PLSURF_E_DISCONNECTED,
  PLSURF_E_BOUNDARY_NOT_LEVEL,
  PLSURF_E_CRITICAL_ON_BOUNDARY,
  PLSURF_E_DEGENERATE_TIE,
  PLSURF_E_NON_MONOTONE_FACE,
  PLSURF_E_UNSUPPORTED_KIND,
  PLSURF_E_NOT_CELLULAR,
  /* precondition failures */
  PLSURF_E_PRECONDITION = 200,
  PLSURF_E_EMPTY_COMPLEMENT,
  PLSURF_E_BOUNDARY_VERTEX,
  PLSURF_E_CRITICAL_LEVEL,
  PLSURF_E_DISK_COMPONENT,
  PLSURF_E_SURFACE_IS_DISK,
  PLSURF_E_SURFACE_IS_SPHERE,
  PLSURF_E_CHI_NOT_NEGATIVE,
  PLSURF_E_NOT_F_PRESERVING,
  PLSURF_E_NOT_DELTA_TRIVIAL,
  PLSURF_E_HYPOTHESIS_FAILS,
  PLSURF_E_ALREADY_ORIENTABLE,
  PLSURF_E_BOUNDARY_NOT_IN_ANNULI,
  PLSURF_E_NECESSARY_CONDITION,
  /* invariant violations */
  PLSURF_E_INVARIANT = 300,
  PLSURF_E_INCONSISTENT_INCIDENCE,
  PLSURF_E_NOT_CHAIN_MAP,
  PLSURF_E_BAND_CONTAINS_OTHER_CRITICAL,
  /* failures outside the library's error model */
  PLSURF_E_INTERNAL = 900,
  PLSURF_E_NULL_ARGUMENT
};

enum plsurf_format { PLSURF_TEXT = 0, PLSURF_JSON = 1 };

typedef struct plsurf_instance plsurf_instance;

/* 0 = ok, 1 = input error, 2 = precondition failure, 3 = invariant
 * violation; internal failures count as invariant violations. */
PLSURF_API int plsurf_status_category(int status);
PLSURF_API const char* plsurf_status_name(int status);
PLSURF_API const char* plsurf_last_error(void);
PLSURF_API void plsurf_string_free(char* s);

/* Parses and validates an instance file. */
PLSURF_API int plsurf_instance_parse(const char* text, plsurf_instance** out);
/* Named kind ("torus", "genus2", ...) or a parameter string
 * "genus=G,crosscaps=K,boundary=B,dimples=D". */
PLSURF_API int plsurf_instance_generate(const char* kind, uint32_t seed, plsurf_instance** out);
PLSURF_API int plsurf_instance_serialize(const plsurf_instance* inst, char** out);
PLSURF_API void plsurf_instance_free(plsurf_instance* inst);
PLSURF_API int plsurf_instance_euler_char(const plsurf_instance* inst, int* out);

/* Newline separated list of named kinds. */
PLSURF_API int plsurf_named_kinds(char** out);

PLSURF_API int plsurf_validate(const plsurf_instance* inst, int format, char** out);
PLSURF_API int plsurf_analyze(const plsurf_instance* inst, int format, char** out);
PLSURF_API int plsurf_atoms(const plsurf_instance* inst, int format, char** out);
/* `dot` may be NULL. */
PLSURF_API int plsurf_decompose(const plsurf_instance* inst, int format, char** out, char** dot);
PLSURF_API int plsurf_lefschetz(const plsurf_instance* inst, const char* automorphism, int assume_isotopic, int format,
                                char** out);
/* Leaf invariance check of an f-preserving automorphism. */
PLSURF_API int plsurf_leaf_check(const plsurf_instance* inst, const char* automorphism, int format, char** out);

/* Runs the property suite. `progress` (may be NULL) receives one line per
 * finished check. `passed` is set to 1 when every check passed. */
typedef void (*plsurf_progress_fn)(const char* line, void* user);
PLSURF_API int plsurf_selftest(plsurf_progress_fn progress, void* user, int format, char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif
