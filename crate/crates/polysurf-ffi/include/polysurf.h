/* C interface for the polysurf library.
 *
 * Complexes are opaque handles created from psc-1 text or a generator spec
 * string and released with psf_complex_free(). Every fallible function
 * returns a PsfStatus; when it is not PSF_OK, psf_last_error() returns a
 * thread-local message valid until the next failing call on the thread.
 *
 * Link against the polysurf_ffi static or shared library built by
 * `cargo build -p polysurf-ffi --release`.
 */

#ifndef POLYSURF_H
#define POLYSURF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum PsfStatus {
  PSF_OK = 0,
  PSF_INVALID_ARGUMENT = 1,
  PSF_PARSE_ERROR = 2,
  PSF_VALIDATION_ERROR = 3,
  PSF_NUMERICAL_ERROR = 4,
} PsfStatus;

typedef enum PsfVerdict {
  PSF_ELLIPTIC = 0,
  PSF_PARABOLIC = 1,
  PSF_HYPERBOLIC = 2,
  PSF_INDETERMINATE = 3,
} PsfVerdict;

typedef struct PsfComplex PsfComplex;

/* Message for the most recent failure on this thread. */
const char *psf_last_error(void);

/* Parse psc-1 text into a new handle. */
PsfStatus psf_complex_from_psc(const char *text, PsfComplex **out);

/* Build a generator family, e.g. "dodecahedron", "prism 6", "pq-ball 7 3 2". */
PsfStatus psf_complex_generate(const char *spec, PsfComplex **out);

/* Release a handle; NULL is accepted. */
void psf_complex_free(PsfComplex *handle);

/* Vertex, edge, and face counts. */
PsfStatus psf_complex_counts(const PsfComplex *handle, uint64_t *vertices,
                             uint64_t *edges, uint64_t *faces);

/* Closed / orientable / edge-to-edge flags (1 = true, 0 = false). */
PsfStatus psf_complex_flags(const PsfComplex *handle, int *closed,
                            int *orientable, int *edge_to_edge);

/* Euler characteristic and the exact curvature sum (reduced fraction);
 * `consistent` reports whether chi equals the sum. Closed complexes only. */
PsfStatus psf_complex_gauss_bonnet(const PsfComplex *handle, int64_t *chi,
                                   int64_t *curvature_num,
                                   int64_t *curvature_den, int *consistent);

/* Conformal type of the universal cover from the curvature signs. When the
 * verdict is PSF_INDETERMINATE, psf_last_error() explains the missing
 * hypothesis. */
PsfStatus psf_complex_classify(const PsfComplex *handle, PsfVerdict *verdict);

/* Serialize back to psc-1; free the string with psf_string_free(). */
PsfStatus psf_complex_to_psc(const PsfComplex *handle, char **out);

/* Release a string returned by this library; NULL is accepted. */
void psf_string_free(char *text);

/* Exact combinatorial curvature of the vertex-type [sizes[0], ...,
 * sizes[len-1]] as a reduced fraction num/den. */
PsfStatus psf_vertex_curvature(const uint32_t *sizes, size_t len, int64_t *num,
                               int64_t *den);

/* Base angle of the unit regular n-gon on the radius-r sphere; requires
 * r > n / (2 pi). */
PsfStatus psf_phi_s(double r, uint32_t n, double *phi);

/* Radius beyond which the spherical angle-sum of the vertex-type stays below
 * 2 pi, padded by `margin`. */
PsfStatus psf_critical_radius(const uint32_t *sizes, size_t len, double margin,
                              double *radius);

#ifdef __cplusplus
}
#endif

#endif /* POLYSURF_H */
