#ifndef COHENCLASS_H
#define COHENCLASS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum CcGaussianKind {
  // `exp(-πλ|x|²)`.
  CC_GAUSSIAN_KIND_PLAIN = 0,
  // Unit L² norm.
  CC_GAUSSIAN_KIND_UNIT_L2 = 1,
  // Unit L¹ norm.
  CC_GAUSSIAN_KIND_UNIT_L1 = 2,
} CcGaussianKind;

typedef enum CcLocPath {
  CC_LOC_PATH_DIRECT = 0,
  CC_LOC_PATH_VIA_WEYL = 1,
} CcLocPath;

// Result code of every fallible call.
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  CC_STATUS_NULL_POINTER = 1,
  CC_STATUS_INVALID_ARGUMENT = 2,
  CC_STATUS_INVALID_EXPONENT = 3,
  CC_STATUS_INADMISSIBLE = 4,
  CC_STATUS_INVALID_GRID = 5,
  CC_STATUS_GRID_MISMATCH = 6,
  CC_STATUS_UNSUPPORTED = 7,
  CC_STATUS_NUMERICAL = 8,
  CC_STATUS_IO = 9,
  CC_STATUS_FORMAT = 10,
  CC_STATUS_PANIC = 11,
} CcStatus;

typedef struct CcGrid CcGrid;

typedef struct CcOperator CcOperator;

typedef struct CcSignal CcSignal;

typedef struct CcTf CcTf;

// Maximizer of the improved concentration bound.
typedef struct CcDsOptimum {
  double r_star;
  double bound;
  bool at_boundary;
} CcDsOptimum;

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *cc_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *cc_version(void);

// One-dimensional grid `x_j = x0 + j·dx`, `j = 0..n`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_grid_new(size_t n, double dx, double x0, struct CcGrid **out);

// One-dimensional grid centered at the origin (`x0 = -n·dx/2`).
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_grid_centered(size_t n, double dx, struct CcGrid **out);

// Number of samples, or 0 for NULL.
//
// # Safety
// `grid` must be NULL or a live handle.
size_t cc_grid_len(const struct CcGrid *grid);

// # Safety
// `grid` must be NULL or a handle not yet freed.
void cc_grid_free(struct CcGrid *grid);

// Signal from separate real and imaginary arrays of length `len`; `im` may
// be NULL for real data.
//
// # Safety
// `re` (and `im` when non-NULL) must point to `len` doubles.
enum CcStatus cc_signal_new(const struct CcGrid *grid,
                            const double *re,
                            const double *im,
                            size_t len,
                            struct CcSignal **out);

// Sampled Gaussian of the given family and dilation.
//
// # Safety
// `grid` must be a live handle and `out` a valid pointer.
enum CcStatus cc_signal_gaussian(const struct CcGrid *grid,
                                 enum CcGaussianKind kind,
                                 double lambda,
                                 struct CcSignal **out);

// Number of samples, or 0 for NULL.
//
// # Safety
// `signal` must be NULL or a live handle.
size_t cc_signal_len(const struct CcSignal *signal);

// Copies the samples into `re` / `im`, each of capacity `len`.
//
// # Safety
// `re` and `im` must point to `len` writable doubles.
enum CcStatus cc_signal_samples(const struct CcSignal *signal, double *re, double *im, size_t len);

// Grid of a signal as a new handle.
//
// # Safety
// `signal` must be a live handle and `out` a valid pointer.
enum CcStatus cc_signal_grid(const struct CcSignal *signal, struct CcGrid **out);

// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum CcStatus cc_signal_read(const char *path, struct CcSignal **out);

// # Safety
// `signal` must be a live handle and `path` a NUL-terminated string.
enum CcStatus cc_signal_write(const struct CcSignal *signal, const char *path);

// # Safety
// `signal` must be NULL or a handle not yet freed.
void cc_signal_free(struct CcSignal *signal);

// Gabor transform `V_g f`.
//
// # Safety
// `f`, `g` must be live handles and `out` a valid pointer.
enum CcStatus cc_gabor(const struct CcSignal *f, const struct CcSignal *g, struct CcTf **out);

// Cross-Wigner transform `Wig(f, g)`.
//
// # Safety
// `f`, `g` must be live handles and `out` a valid pointer.
enum CcStatus cc_wigner(const struct CcSignal *f, const struct CcSignal *g, struct CcTf **out);

// Cohen-class representation; `kernel` is `"dirac"`, `"gausswig:LAMBDA"`
// or the path of a TF file.
//
// # Safety
// Handles must be live, `kernel` NUL-terminated and `out` valid.
enum CcStatus cc_cohen(const char *kernel,
                       const struct CcSignal *f,
                       const struct CcSignal *g,
                       struct CcTf **out);

// Side length `n` of the `n × n` sample array, or 0 for NULL.
//
// # Safety
// `tf` must be NULL or a live handle.
size_t cc_tf_n(const struct CcTf *tf);

// Sample at position index `xi` and centered frequency index `ki`.
//
// # Safety
// `tf` must be a live handle; `re`, `im` valid pointers.
enum CcStatus cc_tf_get(const struct CcTf *tf, size_t xi, size_t ki, double *re, double *im);

// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum CcStatus cc_tf_read(const char *path, struct CcTf **out);

// # Safety
// `tf` must be a live handle and `path` a NUL-terminated string.
enum CcStatus cc_tf_write(const struct CcTf *tf, const char *path);

// Writes `|F|` as a 16-bit PGM.
//
// # Safety
// `tf` must be a live handle and `path` a NUL-terminated string.
enum CcStatus cc_tf_render_pgm(const struct CcTf *tf, const char *path);

// # Safety
// `tf` must be NULL or a handle not yet freed.
void cc_tf_free(struct CcTf *tf);

// Weyl quantization of the symbol `b`.
//
// # Safety
// `symbol` must be a live handle and `out` a valid pointer.
enum CcStatus cc_weyl_operator(const struct CcTf *symbol, struct CcOperator **out);

// Localization operator with symbol `a` and windows `phi`, `psi`.
//
// # Safety
// Handles must be live and `out` valid.
enum CcStatus cc_localization_operator(const struct CcTf *symbol,
                                       const struct CcSignal *phi,
                                       const struct CcSignal *psi,
                                       enum CcLocPath path,
                                       struct CcOperator **out);

// Cohen operator with symbol `a` and kernel spec as in [`cc_cohen`].
//
// # Safety
// Handles must be live, `kernel` NUL-terminated and `out` valid.
enum CcStatus cc_cohen_operator(const struct CcTf *symbol,
                                const char *kernel,
                                struct CcOperator **out);

// # Safety
// Handles must be live and `out` valid.
enum CcStatus cc_operator_apply(const struct CcOperator *op,
                                const struct CcSignal *signal,
                                struct CcSignal **out);

// L² operator norm.
//
// # Safety
// `op` must be a live handle and `out` a valid pointer.
enum CcStatus cc_operator_norm(const struct CcOperator *op, double *out);

// Matrix entry `(t, u)` of the discrete kernel.
//
// # Safety
// `op` must be a live handle; `re`, `im` valid pointers.
enum CcStatus cc_operator_entry(const struct CcOperator *op,
                                size_t t,
                                size_t u,
                                double *re,
                                double *im);

// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum CcStatus cc_operator_read(const char *path, struct CcOperator **out);

// # Safety
// `op` must be a live handle and `path` a NUL-terminated string.
enum CcStatus cc_operator_write(const struct CcOperator *op, const char *path);

// # Safety
// `op` must be NULL or a handle not yet freed.
void cc_operator_free(struct CcOperator *op);

// Babenko-Beckner constant `A_p`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_babenko(double p, double *out);

// Sharp Gabor constant `H(p, q)` in dimension `d`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_h_const(double p, double q, uint32_t d, double *out);

// Wigner constant `C(p, q)` in dimension `d`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_c_const(double p, double q, uint32_t d, double *out);

// Localization operator norm bound from window and symbol norms.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_loc_norm_bound(double q,
                                uint32_t d,
                                double n_phi,
                                double n_psi,
                                double n_a,
                                double *out);

// Cohen operator norm constant for `(r, s, q, p)`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_cohen_norm_bound(double r, double s, double q, double p, uint32_t d, double *out);

// `(1 - ε_T - ε_Ω)²`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_ds_classical_bound(double eps_t, double eps_omega, double *out);

// Improved concentration bound at a fixed `r ≥ 1`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_ds_bound_at(double r, double eps_t, double eps_omega, uint32_t d, double *out);

// Maximizes the improved bound over `r ∈ [1, r_max]`.
//
// # Safety
// `out` must be a valid pointer.
enum CcStatus cc_ds_bound_optimize(double eps_t,
                                   double eps_omega,
                                   uint32_t d,
                                   double r_max,
                                   struct CcDsOptimum *out);

#endif  /* COHENCLASS_H */
