#ifndef OPERAD_FORGE_H
#define OPERAD_FORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum OfStatus {
  OF_STATUS_OK = 0,
  OF_STATUS_NULL_POINTER = 1,
  OF_STATUS_INVALID_UTF8 = 2,
  OF_STATUS_PARSE = 3,
  OF_STATUS_INVALID_INPUT = 4,
  OF_STATUS_BUDGET_EXCEEDED = 5,
  OF_STATUS_NO_LEAST_CELL = 6,
  OF_STATUS_UNKNOWN_SUITE = 7,
  OF_STATUS_IO = 8,
  OF_STATUS_OUT_OF_RANGE = 9,
  OF_STATUS_PANIC = 10,
} OfStatus;

/**
 * An element of a complete-graphs operad: a partial labelling of the
 * complete graph on `k` vertices by oriented edges of colors `1..=n`.
 */
typedef struct OfGraph OfGraph;

/**
 * Integer homology of the nerve of a poset.
 */
typedef struct OfHomology OfHomology;

/**
 * A finite poset.
 */
typedef struct OfPoset OfPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call on the same thread.
 */
const char *of_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *of_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void of_string_free(char *s);

/**
 * Parses `{"size": n, "leq": [[i, j], ...]}` (reflexive and
 * transitive closure taken).
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum OfStatus of_poset_from_json(const char *json, struct OfPoset **out);

/**
 * The carrier poset of `K̂⁽ⁿ⁾(k)`, or of `K⁽ⁿ⁾(k)` when `total` is true.
 *
 * # Safety
 * `out` must be writable.
 */
enum OfStatus of_poset_complete_graphs(uint8_t n, size_t k, bool total, struct OfPoset **out);

/**
 * Number of elements; 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live poset handle.
 */
size_t of_poset_size(const struct OfPoset *p);

/**
 * # Safety
 * `p` must be a live poset handle.
 */
enum OfStatus of_poset_leq(const struct OfPoset *p, size_t i, size_t j, bool *out);

/**
 * Number of connected components of the comparability graph.
 *
 * # Safety
 * `p` must be a live poset handle.
 */
enum OfStatus of_poset_component_count(const struct OfPoset *p, size_t *out);

/**
 * # Safety
 * `p` must be null or a handle from this library, freed once.
 */
void of_poset_free(struct OfPoset *p);

/**
 * Integer homology of the nerve. `simplex_budget` 0 selects the default;
 * over budget the nerve of the core is used, and if that is still too
 * large the call fails with `OF_STATUS_BUDGET_EXCEEDED`.
 *
 * # Safety
 * `p` must be a live poset handle; `out` must be writable.
 */
enum OfStatus of_poset_homology(const struct OfPoset *p,
                                uint64_t simplex_budget,
                                struct OfHomology **out);

/**
 * Number of degrees with recorded groups; 0 for a null handle.
 *
 * # Safety
 * `h` must be null or a live homology handle.
 */
size_t of_homology_degrees(const struct OfHomology *h);

/**
 * Rank of `H_degree`; 0 past the top degree.
 *
 * # Safety
 * `h` must be a live homology handle.
 */
enum OfStatus of_homology_betti(const struct OfHomology *h, size_t degree, size_t *out);

/**
 * # Safety
 * `h` must be a live homology handle.
 */
enum OfStatus of_homology_euler_characteristic(const struct OfHomology *h, int64_t *out);

/**
 * Betti numbers and torsion coefficients as JSON. Free with
 * [`of_string_free`].
 *
 * # Safety
 * `h` must be a live homology handle; `out` must be writable.
 */
enum OfStatus of_homology_to_json(const struct OfHomology *h, char **out);

/**
 * # Safety
 * `h` must be null or a handle from this library, freed once.
 */
void of_homology_free(struct OfHomology *h);

/**
 * Parses `{"k": 3, "n": 2, "edges": [{"a": 1, "b": 2, "dir": "ab",
 * "color": 1}, ...]}`; vertices are 1-based, unlisted edges unlabelled.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum OfStatus of_graph_from_json(const char *json, struct OfGraph **out);

/**
 * # Safety
 * `g` must be a live graph handle; `out` must be writable.
 */
enum OfStatus of_graph_to_json(const struct OfGraph *g, char **out);

/**
 * Arity `k`; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t of_graph_arity(const struct OfGraph *g);

/**
 * Whether every edge label of `a` is at or below the one of `b`.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum OfStatus of_graph_leq(const struct OfGraph *a, const struct OfGraph *b, bool *out);

/**
 * Operadic composition `outer(inners[0], ..., inners[count-1])`.
 *
 * # Safety
 * `inners` must point to `count` live graph handles.
 */
enum OfStatus of_graph_compose(const struct OfGraph *outer,
                               const struct OfGraph *const *inners,
                               size_t count,
                               struct OfGraph **out);

/**
 * Acts by the permutation sending vertex `i` to `images[i]` (0-based).
 *
 * # Safety
 * `images` must point to `k` values where `k` is the arity of `g`.
 */
enum OfStatus of_graph_act(const struct OfGraph *g, const size_t *images, struct OfGraph **out);

/**
 * The least total labelling whose cell contains the cube configuration
 * given as JSON (a list of cubes, each `{"n": .., "intervals": [[lo, hi],
 * ...]}` with rational endpoints written as strings).
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `out` must be writable.
 */
enum OfStatus of_min_cell(const char *config_json, struct OfGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, freed once.
 */
void of_graph_free(struct OfGraph *g);

/**
 * Runs a verification suite and returns its JSON report. `config` holds
 * `key = value` lines (may be null). `exit_code` receives 0 when every
 * required check passed and 1 otherwise; the status only reports whether
 * the suite could run.
 *
 * # Safety
 * String arguments must be NUL-terminated; outputs must be writable.
 */
enum OfStatus of_run_suite(const char *suite,
                           const char *config,
                           char **report_json,
                           int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPERAD_FORGE_H */
