#ifndef HYPERCOLOR_H
#define HYPERCOLOR_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Colorer selector for `hc_run_trials`.
 */
typedef enum HcAlgorithm {
  HC_ALGORITHM_ALON = 0,
  HC_ALGORITHM_PLUHAR = 1,
  HC_ALGORITHM_AKOLZIN_SHABANOV = 2,
} HcAlgorithm;

/**
 * Sequence selector for `hc_limit_sequence`.
 */
typedef enum HcLimitKind {
  HC_LIMIT_KIND_ALON = 0,
  HC_LIMIT_KIND_PLUHAR = 1,
  HC_LIMIT_KIND_CHAIN = 2,
} HcLimitKind;

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_ARGUMENT = 2,
  HC_STATUS_PARSE = 3,
  HC_STATUS_CAP_EXCEEDED = 4,
  HC_STATUS_OVERFLOW = 5,
  HC_STATUS_INTERNAL = 6,
} HcStatus;

typedef struct HcFTable HcFTable;

typedef struct HcHypergraph HcHypergraph;

typedef struct HcAsOptimum {
  double c;
  double p;
  double x;
  double certified_c;
} HcAsOptimum;

/**
 * `mean_*` fields are NaN when the algorithm does not track them.
 */
typedef struct HcTrialSummary {
  uint64_t trials;
  uint64_t successes;
  double mean_monochromatic;
  double mean_bad_edges;
} HcTrialSummary;

typedef struct HcSegmentBound {
  size_t m;
  size_t window_start;
  size_t window_end;
  size_t argmax;
  double k;
  double l3;
  uint64_t l3_numerator;
  uint64_t l3_denominator;
} HcSegmentBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, as a static NUL-terminated string.
 */
const char *hc_version(void);

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *hc_last_error_message(void);

/**
 * Parses the text format: header `vertices edges uniformity`, then one edge per line.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum HcStatus hc_hypergraph_parse(const char *text, struct HcHypergraph **out_h);

/**
 * Builds a hypergraph from `num_edges * uniformity` vertex ids laid out edge by edge.
 *
 * # Safety
 * `vertices` must point to `num_edges * uniformity` values; `out` must be writable.
 */
enum HcStatus hc_hypergraph_from_edges(size_t num_vertices,
                                       size_t uniformity,
                                       const size_t *vertices,
                                       size_t num_edges,
                                       struct HcHypergraph **out_h);

/**
 * Builds a named family: `fano`, `complete:V:N`, `random:V:M:N:SEED`, `chain:N:R`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
enum HcStatus hc_hypergraph_generate(const char *family, struct HcHypergraph **out_h);

/**
 * # Safety
 * `h` must come from this library and not be freed twice. NULL is ignored.
 */
void hc_hypergraph_free(struct HcHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or NULL (returns 0).
 */
size_t hc_hypergraph_num_vertices(const struct HcHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or NULL (returns 0).
 */
size_t hc_hypergraph_num_edges(const struct HcHypergraph *h);

/**
 * # Safety
 * `h` must be a live handle or NULL (returns 0).
 */
size_t hc_hypergraph_uniformity(const struct HcHypergraph *h);

/**
 * Text form of `h`; release with `hc_string_free`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_hypergraph_to_text(const struct HcHypergraph *h, char **out_s);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. NULL is ignored.
 */
void hc_string_free(char *s);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_chromatic_number(const struct HcHypergraph *h, size_t *out_chi);

/**
 * Checks a coloring with colors in `1..=palette`.
 *
 * # Safety
 * `colors` must point to `len` values; `h` must be live; `out` writable.
 */
enum HcStatus hc_is_proper(const struct HcHypergraph *h,
                           const uint32_t *colors,
                           size_t len,
                           uint32_t palette,
                           bool *out_proper);

/**
 * Counts r-chains, as edge sequences or (when `sets` is true) up to reversal.
 *
 * # Safety
 * `h` must be live; `out` writable.
 */
enum HcStatus hc_count_chains(const struct HcHypergraph *h,
                              size_t r,
                              bool sets,
                              uint64_t *out_count);

/**
 * Searches for a vertex order on which greedy r-coloring succeeds.
 * `out_order` may be NULL; otherwise it receives `num_vertices` ids when found.
 *
 * # Safety
 * `h` must be live; `out_found` writable; `out_order` NULL or `num_vertices` long.
 */
enum HcStatus hc_exists_good_order(const struct HcHypergraph *h,
                                   size_t r,
                                   bool *out_found,
                                   size_t *out_order);

/**
 * Induced r-vertex paths in the one-point-intersection graph of `h`.
 *
 * # Safety
 * `h` must be live; `out` writable.
 */
enum HcStatus hc_count_induced_paths_aux(const struct HcHypergraph *h,
                                         size_t r,
                                         uint64_t *out_count);

/**
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_alon_lower(size_t n, size_t r, uint64_t *out_edges);

/**
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_pluhar_threshold(size_t n, size_t r, uint64_t *out_edges);

/**
 * Chain-based threshold; `corrected` selects the factor 8 charge per set-counted chain.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_chain_threshold(size_t r, bool corrected, uint64_t *out_edges);

/**
 * Finite-r term of a limit sequence; `kind` is an `HcLimitKind` value.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_limit_sequence(uint32_t kind, uint64_t r, double *out_value);

/**
 * Grid optimum of the weighted-colorer constraint pair.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_as_optimize(bool pure, bool corrected, size_t grid, struct HcAsOptimum *out_opt);

/**
 * Seeded colorer trials. `a == 0` and NaN `p` mean "not given".
 *
 * # Safety
 * `h` must be live; `out` writable.
 */
enum HcStatus hc_run_trials(const struct HcHypergraph *h,
                            uint32_t algorithm,
                            uint32_t r,
                            uint32_t a,
                            double p,
                            uint64_t trials,
                            uint64_t seed,
                            struct HcTrialSummary *out_summary);

/**
 * Table holding the known small values.
 *
 * # Safety
 * `out` must be writable.
 */
enum HcStatus hc_ftable_seed(struct HcFTable **out_t);

/**
 * New table extended to `n_max` with splitting factors `p_set`.
 *
 * # Safety
 * `t` must be live; `p_set` must point to `p_len` values; `out` writable.
 */
enum HcStatus hc_ftable_extend(const struct HcFTable *t,
                               size_t n_max,
                               const uint32_t *p_set,
                               size_t p_len,
                               struct HcFTable **out_t);

/**
 * # Safety
 * `t` must be a live handle or NULL (returns 0).
 */
size_t hc_ftable_len(const struct HcFTable *t);

/**
 * # Safety
 * `t` must be live; `out` writable.
 */
enum HcStatus hc_ftable_get(const struct HcFTable *t, size_t n, uint64_t *out_value);

/**
 * Best window bound over window starts `m_min..=m_max`.
 *
 * # Safety
 * `t` must be live; `out` writable.
 */
enum HcStatus hc_ftable_best_bound(const struct HcFTable *t,
                                   size_t m_min,
                                   size_t m_max,
                                   struct HcSegmentBound *out_bound);

/**
 * # Safety
 * `t` must come from this library and not be freed twice. NULL is ignored.
 */
void hc_ftable_free(struct HcFTable *t);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERCOLOR_H */
