#ifndef NOGO_H
#define NOGO_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Result codes. The numeric values match the `nogo` exit codes where they
 overlap.
 */
typedef enum NogoStatus {
  NOGO_STATUS_OK = 0,
  /*
   A check ran and failed.
   */
  NOGO_STATUS_CHECK_FAILED = 1,
  /*
   Unparsable or unsupported input.
   */
  NOGO_STATUS_INVALID_INPUT = 2,
  NOGO_STATUS_NULL_POINTER = 3,
  /*
   A Rust panic was caught at the boundary.
   */
  NOGO_STATUS_INTERNAL = 4,
} NogoStatus;

/*
 A validated Lie algebra.
 */
typedef struct NogoAlgebra NogoAlgebra;

/*
 A certificate of any kind.
 */
typedef struct NogoCertificate NogoCertificate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copy of the last error message on this thread, or null if the last call
 succeeded. Release with [`nogo_string_free`].
 */
char *nogo_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void nogo_string_free(char *s);

/*
 Builds a named algebra such as `"su2"`, `"so4"` or `"su3"`.

 # Safety
 `name` must be a valid NUL-terminated string and `out` writable.
 */
enum NogoStatus nogo_algebra_builtin(const char *name, struct NogoAlgebra **out);

/*
 Parses a JSON algebra description. Structure constants that violate
 antisymmetry or the Jacobi identity give `CheckFailed`.

 # Safety
 `json` must be a valid NUL-terminated string and `out` writable.
 */
enum NogoStatus nogo_algebra_from_json(const char *json, struct NogoAlgebra **out);

/*
 Dimension of the algebra, or 0 for a null handle.

 # Safety
 `alg` must be null or a live algebra handle.
 */
size_t nogo_algebra_dim(const struct NogoAlgebra *alg);

/*
 Writes whether the algebra is semisimple of compact type with zero
 center.

 # Safety
 `alg` must be a live algebra handle and `out` writable.
 */
enum NogoStatus nogo_algebra_is_compact_semisimple(const struct NogoAlgebra *alg, bool *out);

/*
 # Safety
 `alg` must be null or a live algebra handle; it is invalid afterwards.
 */
void nogo_algebra_free(struct NogoAlgebra *alg);

/*
 Runs the no-go chain at degree cap `k` and returns the triviality
 certificate. `sphere_radius` is a rational literal such as `"1"` or
 `"3/2"`, or null for no orbit ideal. A failing step gives `CheckFailed`
 with the step named in the error message.

 # Safety
 `alg` must be a live algebra handle, `sphere_radius` null or a valid
 string, and `out` writable.
 */
enum NogoStatus nogo_certify(const struct NogoAlgebra *alg,
                             const char *sphere_radius,
                             uint32_t k,
                             size_t max_dim,
                             struct NogoCertificate **out);

/*
 Runs the feasibility probe for spin `j` (a literal such as `"1/2"`)
 with domain degree `k`. The certificate has been re-checked before it
 is returned.

 # Safety
 `j` must be a valid NUL-terminated string and `out` writable.
 */
enum NogoStatus nogo_probe(const char *j, uint32_t k, struct NogoCertificate **out);

/*
 Loads a certificate without checking it. Malformed JSON and unknown
 schema versions give `InvalidInput`; payloads of the wrong shape give
 `CheckFailed`.

 # Safety
 `json` must be a valid NUL-terminated string and `out` writable.
 */
enum NogoStatus nogo_certificate_from_json(const char *json, struct NogoCertificate **out);

/*
 Independent re-check. `Ok` means the certificate is valid.

 # Safety
 `cert` must be a live certificate handle.
 */
enum NogoStatus nogo_certificate_verify(const struct NogoCertificate *cert);

/*
 Certificate kind such as `"DerivedIdeal"`, or null for a null handle.
 Release with [`nogo_string_free`].

 # Safety
 `cert` must be null or a live certificate handle.
 */
char *nogo_certificate_kind(const struct NogoCertificate *cert);

/*
 Pretty-printed JSON, or null for a null handle. Release with
 [`nogo_string_free`].

 # Safety
 `cert` must be null or a live certificate handle.
 */
char *nogo_certificate_to_json(const struct NogoCertificate *cert);

/*
 # Safety
 `cert` must be null or a live certificate handle; it is invalid
 afterwards.
 */
void nogo_certificate_free(struct NogoCertificate *cert);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NOGO_H */
