/* C ABI for the bandkit library (maintained by hand; keep in sync with
 * crates/capi/src/lib.rs). Handles are opaque and thread-safe; strings
 * returned by the library must be released with bk_string_free. */

#ifndef BANDKIT_H
#define BANDKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handle to a band. */
typedef struct BkBand BkBand;

/* Verdict and flag codes. */
#define BK_OUT 0
#define BK_IN 1
#define BK_FALSE 0
#define BK_TRUE 1
#define BK_UNKNOWN 2
#define BK_ERROR (-1)

/* Standard library lookup: "F1pm", "K", "S", "F2".."F5", "T", "U", "D",
 * "G", "Z/m", or a builtin algebra name such as "A2" or "SL2".
 * Returns NULL on unknown names. */
BkBand *bk_band_standard(const char *name);
void bk_band_free(BkBand *band);

/* Carrier size; -1 when the carrier is infinite. */
int64_t bk_band_element_count(const BkBand *band);

/* Monoid structure on element ids. Id 0 is zero. */
uint32_t bk_band_mul(const BkBand *band, uint32_t a, uint32_t b);
uint32_t bk_band_neg(const BkBand *band, uint32_t a);

/* Null membership of a formal sum, given as element ids with
 * multiplicity by repetition. Returns BK_IN, BK_OUT, BK_UNKNOWN or
 * BK_ERROR. */
int32_t bk_band_is_null(const BkBand *band, const uint32_t *terms, size_t len,
                        uint32_t bound);

/* Printed element name; free with bk_string_free. */
char *bk_band_element_name(const BkBand *band, uint32_t a);

/* Bounded fusion-axiom check: BK_TRUE, BK_FALSE or BK_UNKNOWN. */
int32_t bk_band_check_fusion(const BkBand *band, uint32_t bound);

/* Number of prime m-ideals; BK_ERROR for unsupported carriers. */
int64_t bk_spec_point_count(const BkBand *band);

/* Number of K-points of Gr(r, n) (rank-r matroids on {1..n}). */
int64_t bk_grassmannian_point_count(size_t r, size_t n);

/* Runs one command from a JSON request, returning the JSON report.
 * Request shape:
 *   {"command": "spec", "subject": "A2", "over": "K", "bound": 6,
 *    "source": "band X { ... }"}
 * with "over", "bound", "topology" and "source" optional. Free the
 * result with bk_string_free; NULL is returned on malformed requests. */
char *bk_eval(const char *request);

void bk_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* BANDKIT_H */
