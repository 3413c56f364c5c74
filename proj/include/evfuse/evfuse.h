/*
 * evfuse C API.
 *
 * Objects are opaque handles created by evf_*_create/parse functions and
 * released with the matching evf_*_free. Every fallible call returns an
 * evf_status; on failure evf_last_error() describes the problem and
 * evf_last_error_kind() names its category (e.g. "UnknownState"). Both
 * strings are thread-local and stay valid until the next failing call on the
 * same thread.
 *
 * Strings returned through `char** out` parameters are owned by the caller
 * and must be released with evf_string_free.
 */
#ifndef EVFUSE_EVFUSE_H
#define EVFUSE_EVFUSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EVFUSE_BUILDING_LIBRARY)
#    define EVF_API __declspec(dllexport)
#  else
#    define EVF_API __declspec(dllimport)
#  endif
#else
#  define EVF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evf_status {
  EVF_OK = 0,
  EVF_ERR_USAGE = 1,      /* bad argument, unknown allocator name, ... */
  EVF_ERR_FRAME = 2,      /* document or frame validation failure */
  EVF_ERR_CAPACITY = 3,   /* enumeration or topology size limit hit */
  EVF_ERR_VERIFY = 4,     /* a verification check failed */
  EVF_ERR_INTERNAL = 5
} evf_status;

typedef struct evf_frame evf_frame;
typedef struct evf_justification evf_justification;
typedef struct evf_allocator evf_allocator;
typedef struct evf_report evf_report;

EVF_API const char* evf_version(void);
EVF_API const char* evf_last_error(void);
EVF_API const char* evf_last_error_kind(void);
EVF_API void evf_string_free(char* s);

/* ---- frames ------------------------------------------------------------ */

EVF_API evf_status evf_frame_parse(const char* json, size_t len, evf_frame** out);
/* The bundled autonomous-car example. */
EVF_API evf_status evf_frame_car_example(evf_frame** out);
/* Deterministic random frame, as used by the verification corpus. */
EVF_API evf_status evf_frame_random(uint64_t seed, size_t max_states, size_t max_items, evf_frame** out);
EVF_API void evf_frame_free(evf_frame* frame);

EVF_API size_t evf_frame_state_count(const evf_frame* frame);
EVF_API const char* evf_frame_state_label(const evf_frame* frame, size_t index);
EVF_API size_t evf_frame_item_count(const evf_frame* frame);
EVF_API const char* evf_frame_item_name(const evf_frame* frame, size_t index);
/* Canonical frame document. */
EVF_API evf_status evf_frame_to_json(const evf_frame* frame, char** out);

/* ---- qualitative layer ------------------------------------------------- */

/* {"opens": [{"states": [...], "dense": bool}, ...], "min_dense": [...]} */
EVF_API evf_status evf_topology_json(const evf_frame* frame, char** out);

/* kind is "ds" or "sd". */
EVF_API evf_status evf_justification_builtin(const evf_frame* frame, const char* kind, evf_justification** out);
/* json is {"opens": [["dp","dm"], ...]}. */
EVF_API evf_status evf_justification_custom(const evf_frame* frame, const char* json, size_t len,
                                            evf_justification** out);
EVF_API void evf_justification_free(evf_justification* j);

/* ---- quantitative and bridging layers ---------------------------------- */

/* {"rows": [{"evidence": [...], "mass": {"num","den","rendered"}}], "total": {...}} */
EVF_API evf_status evf_mass_json(const evf_frame* frame, unsigned precision, char** out);

/* name is "i", "u", "d" or "yager". */
EVF_API evf_status evf_allocator_builtin(const evf_frame* frame, const char* name, evf_allocator** out);
/* json is {"map": [{"evidence": ["E1","E2"], "image": ["dm"]}, ...]} and must
 * cover every subset of the frame's evidence exactly once. */
EVF_API evf_status evf_allocator_custom(const evf_frame* frame, const char* name, const char* json, size_t len,
                                        evf_allocator** out);
EVF_API void evf_allocator_free(evf_allocator* a);
EVF_API const char* evf_allocator_name(const evf_allocator* a);

/* {"allocators": [...], "rows": [{"evidence": [...], "images": {name: [...]},
 *   "delta": {...}}], "violations": [...]} */
EVF_API evf_status evf_allocate_json(const evf_frame* frame, const evf_allocator* const* allocators, size_t count,
                                     unsigned precision, char** out);

/* propositions: comma-separated state names per proposition, propositions
 * separated by ';' (e.g. "dp,do,dm;sp,dp"). May be NULL or empty. */
EVF_API evf_status evf_believe(const evf_frame* frame, const evf_justification* j,
                               const evf_allocator* const* allocators, size_t count, const char* propositions,
                               evf_report** out);
EVF_API void evf_report_free(evf_report* r);
EVF_API size_t evf_report_proposition_count(const evf_report* r);
EVF_API size_t evf_report_allocator_count(const evf_report* r);
/* Belief of proposition `row` under allocator `col`. exact != 0 gives "n/d",
 * otherwise a half-up decimal with `precision` places. */
EVF_API evf_status evf_report_belief(const evf_report* r, size_t row, size_t col, unsigned precision, int exact,
                                     char** out);
EVF_API evf_status evf_report_to_json(const evf_report* r, unsigned precision, char** out);

/* ---- verification ------------------------------------------------------ */

/* {"passed": bool, "checks": [{"check", "passed", "detail"}], "witnesses": [...]}.
 * Returns EVF_ERR_VERIFY (with *out still set) when any check fails. */
EVF_API evf_status evf_verify_json(const evf_frame* frame, char** out);
/* Same, restricted to the given allocators. */
EVF_API evf_status evf_verify_allocators_json(const evf_frame* frame, const evf_allocator* const* allocators,
                                              size_t count, char** out);

#ifdef __cplusplus
}
#endif

#endif /* EVFUSE_EVFUSE_H */
