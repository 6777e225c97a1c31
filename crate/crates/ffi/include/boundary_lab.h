#ifndef BOUNDARY_LAB_H
#define BOUNDARY_LAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BlPrimeEndClass {
  BL_PRIME_END_CLASS_REGULAR = 0,
  BL_PRIME_END_CLASS_SINGULAR = 1,
  BL_PRIME_END_CLASS_PARABOLIC = 2,
} BlPrimeEndClass;

typedef enum BlRadialType {
  BL_RADIAL_TYPE_ESCAPING = 0,
  BL_RADIAL_TYPE_BOUNDED = 1,
  BL_RADIAL_TYPE_BUNGEE = 2,
  BL_RADIAL_TYPE_UNDECIDED = 3,
} BlRadialType;

typedef enum BlStatus {
  BL_STATUS_OK = 0,
  BL_STATUS_NULL_POINTER = 1,
  BL_STATUS_INVALID_ARGUMENT = 2,
  BL_STATUS_PARSE = 3,
  BL_STATUS_AMBIGUOUS = 4,
  BL_STATUS_NOT_ESCAPING = 5,
  BL_STATUS_RESOURCE_LIMIT = 6,
  BL_STATUS_DOMAIN = 7,
  BL_STATUS_PANIC = 8,
} BlStatus;

// Opaque explicit covering.
typedef struct BlCovering BlCovering;

// Opaque pairing system.
typedef struct BlSystem BlSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *bl_status_message(enum BlStatus status);

// Load a fixture by name, or a system or domain JSON file by path.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum BlStatus bl_system_load(const char *name, uint32_t levels, struct BlSystem **out);

// Parse a system from its JSON text.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum BlStatus bl_system_from_json(const char *json, struct BlSystem **out);

// # Safety
// `sys` must come from `bl_system_load`/`bl_system_from_json` and not be used afterwards.
void bl_system_free(struct BlSystem *sys);

// # Safety
// Pointers must be valid.
enum BlStatus bl_system_rank(const struct BlSystem *sys, uintptr_t *out);

// Radial type of `e^{iθ}` from at most `horizon` itinerary letters.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_radial_type(const struct BlSystem *sys,
                             double theta,
                             uintptr_t horizon,
                             enum BlRadialType *out);

// Prime-end class at an escaping point.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_prime_end_class(const struct BlSystem *sys,
                                 double theta,
                                 uintptr_t horizon,
                                 enum BlPrimeEndClass *out);

// Total length of the limit-set cover at `depth`.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_cover_length(const struct BlSystem *sys, uintptr_t depth, double *out);

// Number of prime-end classes of depth-0 gaps.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_quotient_count(const struct BlSystem *sys, uint32_t horizon, uintptr_t *out);

// Classification report of `e^{iθ}` as a JSON string, released with `bl_string_free`.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_classify_json(const struct BlSystem *sys,
                               double theta,
                               uintptr_t horizon,
                               char **out);

// # Safety
// `s` must come from this library and not be used afterwards.
void bl_string_free(char *s);

// Covering of `{1/R < |z| < R}`.
//
// # Safety
// `out` must be valid.
enum BlStatus bl_covering_annulus(double r, struct BlCovering **out);

// Covering of the punctured unit disk.
//
// # Safety
// `out` must be valid.
enum BlStatus bl_covering_punctured(struct BlCovering **out);

// # Safety
// `cov` must come from a `bl_covering_*` constructor and not be used afterwards.
void bl_covering_free(struct BlCovering *cov);

// `π(re + i·im)`.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_covering_eval(const struct BlCovering *cov,
                               double re,
                               double im,
                               double *out_re,
                               double *out_im);

// Radial type along the radius to `e^{iθ}` of an explicit covering; `Undecided` stands
// for an undetermined trace.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_covering_radial(const struct BlCovering *cov,
                                 double theta,
                                 uintptr_t samples,
                                 enum BlRadialType *out);

// Harmonic measure of the inner circle of `{1/R < |z| < R}` at `re + i·im`. With
// `n_walks == 0` the closed form is used and the standard error is 0.
//
// # Safety
// Pointers must be valid.
enum BlStatus bl_harmonic_annulus(double r,
                                  double re,
                                  double im,
                                  uint64_t n_walks,
                                  uint64_t seed,
                                  double *out_value,
                                  double *out_stderr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BOUNDARY_LAB_H */
