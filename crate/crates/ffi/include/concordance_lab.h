#ifndef CONCORDANCE_LAB_H
#define CONCORDANCE_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum ClStatus {
  CL_STATUS_OK = 0,
  CL_STATUS_NULL_POINTER = 1,
  CL_STATUS_INVALID_UTF8 = 2,
  CL_STATUS_INVALID_JSON = 3,
  CL_STATUS_INVALID_DIAGRAM = 4,
  // Algebraic failure, e.g. a Levine-Tristram query at a root of the
  // Alexander polynomial.
  CL_STATUS_ALGEBRA = 5,
  CL_STATUS_INVALID_TOWER = 6,
  CL_STATUS_UNKNOWN_SET = 7,
  CL_STATUS_CONTRADICTION = 8,
  // A value does not fit the C output type.
  CL_STATUS_OVERFLOW = 9,
  CL_STATUS_IO = 10,
  CL_STATUS_INTERNAL = 99,
} ClStatus;

// Membership verdict.
typedef enum ClVerdict {
  CL_VERDICT_NON_MEMBER = -1,
  CL_VERDICT_UNKNOWN = 0,
  CL_VERDICT_MEMBER = 1,
} ClVerdict;

// A knot: a diagram with its Seifert matrix, or a bare Seifert matrix.
typedef struct ClKnot ClKnot;

// Knowledge base of filtration facts.
typedef struct ClKnowledgeBase ClKnowledgeBase;

// Casson tower as a signed-kink tree.
typedef struct ClTower ClTower;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into the library.
const char *cl_last_error(void);

// Library version, static storage.
const char *cl_version(void);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void cl_string_free(char *s);

// Build a knot from a PD code: `n_crossings` groups of four labels.
//
// # Safety
// `name` is a NUL-terminated string; `pd` points to `4 * n_crossings`
// integers (may be NULL when `n_crossings` is 0); `out` is writable.
enum ClStatus cl_knot_from_pd(const char *name,
                              const int64_t *pd,
                              size_t n_crossings,
                              struct ClKnot **out);

// Build a knot from JSON: a diagram file `{"name", "pd", ...}` or a matrix
// file `{"name", "genus", "rows"}`.
//
// # Safety
// `json` is a NUL-terminated string; `out` is writable.
enum ClStatus cl_knot_from_json(const char *json, struct ClKnot **out);

// # Safety
// `k` comes from a `cl_knot_*` constructor and is not used afterwards.
void cl_knot_free(struct ClKnot *k);

// Genus of the Seifert surface the matrix comes from.
//
// # Safety
// Pointers are valid.
enum ClStatus cl_knot_genus(const struct ClKnot *k, size_t *out);

// # Safety
// Pointers are valid; `nullity` may be NULL.
enum ClStatus cl_knot_signature(const struct ClKnot *k, int64_t *sig, size_t *nullity);

// # Safety
// Pointers are valid.
enum ClStatus cl_knot_arf(const struct ClKnot *k, uint8_t *out);

// |Delta(-1)|; `Overflow` if it does not fit.
//
// # Safety
// Pointers are valid.
enum ClStatus cl_knot_determinant(const struct ClKnot *k, int64_t *out);

// Whether Delta factors as f(t) f(1/t) up to units.
//
// # Safety
// Pointers are valid.
enum ClStatus cl_knot_fox_milnor(const struct ClKnot *k, bool *out);

// Levine-Tristram signature at exp(2 pi i num/den); `Algebra` at a root of
// the Alexander polynomial.
//
// # Safety
// Pointers are valid.
enum ClStatus cl_knot_levine_tristram(const struct ClKnot *k,
                                      int64_t num,
                                      int64_t den,
                                      int64_t *out);

// Normalized Alexander polynomial as text, e.g. "t - 1 + t^-1".
//
// # Safety
// Pointers are valid; free the result with `cl_string_free`.
enum ClStatus cl_knot_alexander(const struct ClKnot *k, char **out);

// Full invariant report as JSON.
//
// # Safety
// Pointers are valid; free the result with `cl_string_free`.
enum ClStatus cl_knot_report_json(const struct ClKnot *k, char **out);

// Empty knowledge base with filtration indices up to `bound` (at least 2).
//
// # Safety
// `out` is writable.
enum ClStatus cl_kb_new(uint32_t bound, bool conjectures, struct ClKnowledgeBase **out);

// # Safety
// `kb` comes from `cl_kb_new` and is not used afterwards.
void cl_kb_free(struct ClKnowledgeBase *kb);

// Register everything computable about a knot under its own name:
// crossing-change certificates and classical obstructions.
//
// # Safety
// Pointers are valid.
enum ClStatus cl_kb_register_knot(struct ClKnowledgeBase *kb, const struct ClKnot *k);

// Add facts from a JSON list of `{knot, set, polarity, justification}`.
//
// # Safety
// Pointers are valid.
enum ClStatus cl_kb_add_facts_json(struct ClKnowledgeBase *kb, const char *json);

// Verdict for `knot` in the set named by `set` (e.g. "C+_3", "P_0", "T").
//
// # Safety
// Pointers are valid.
enum ClStatus cl_kb_verdict(const struct ClKnowledgeBase *kb,
                            const char *knot,
                            const char *set,
                            enum ClVerdict *out);

// All verdicts for `knot`, with derivation traces, as JSON.
//
// # Safety
// Pointers are valid; free the result with `cl_string_free`.
enum ClStatus cl_kb_deduce_json(const struct ClKnowledgeBase *kb, const char *knot, char **out);

// Parse and validate a tower `{"pos", "neg", "children": [...]}`.
//
// # Safety
// `json` is a NUL-terminated string; `out` is writable.
enum ClStatus cl_tower_from_json(const char *json, struct ClTower **out);

// # Safety
// `t` comes from `cl_tower_from_json` and is not used afterwards.
void cl_tower_free(struct ClTower *t);

// # Safety
// Pointers are valid.
enum ClStatus cl_tower_height(const struct ClTower *t, size_t *out);

// The grope inside the tower, as JSON `{"genus", "children": [...]}`.
//
// # Safety
// Pointers are valid; free the result with `cl_string_free`.
enum ClStatus cl_tower_to_grope_json(const struct ClTower *t, char **out);

// Positivity certificate from blowing up the base kinks, as JSON.
//
// # Safety
// Pointers are valid; free the result with `cl_string_free`.
enum ClStatus cl_tower_certify_json(const struct ClTower *t, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONCORDANCE_LAB_H */
