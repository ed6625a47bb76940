#ifndef DIRAC_SCATTER_H
#define DIRAC_SCATTER_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every call returning ds_status leaves a one-line message in
   ds_last_error() (thread local) on failure. */
typedef enum {
    DS_OK = 0,
    DS_ERR_PARAMETER = 1,
    DS_ERR_PRECONDITION = 2,
    DS_ERR_CLASS = 3,
    DS_ERR_NUMERICAL = 4,
    DS_ERR_IO = 5,
    DS_ERR_INTERNAL = 6
} ds_status;

typedef struct ds_potential ds_potential;      /* sampled potential on [offset, offset + gamma] */
typedef struct ds_table ds_table;              /* k grid with a and b columns */
typedef struct ds_zeros ds_zeros;              /* zeros with multiplicities */
typedef struct ds_xi ds_xi;                    /* xi0, p and sign data */
typedef struct ds_hamiltonian ds_hamiltonian;  /* 2x2 real symmetric matrix function */

const char* ds_last_error(void);
const char* ds_version(void);

/* ---- potentials ---- */

/* kind: zero, constant, bump, random_bandlimited. keys/values: parameters
   (c_re, c_im, amplitude, width, bands). */
ds_status ds_potential_generate(const char* kind, double gamma, int n, const char* const* keys,
                                const double* values, int count, uint64_t seed, ds_potential** out);
ds_status ds_potential_from_samples(double gamma, double offset, int n, const double* re,
                                    const double* im, ds_potential** out);
ds_status ds_potential_read(const char* path, ds_potential** out);
ds_status ds_potential_write(const ds_potential* q, const char* path);
void ds_potential_free(ds_potential* q);
int ds_potential_size(const ds_potential* q);
double ds_potential_gamma(const ds_potential* q);
double ds_potential_offset(const ds_potential* q);
/* Node positions and values; arrays of ds_potential_size entries, any may be NULL. */
ds_status ds_potential_values(const ds_potential* q, double* x, double* re, double* im);
/* kind: reflect, conjugate, phase, shift, modulate. */
ds_status ds_potential_transform(const ds_potential* q, const char* kind, double param,
                                 ds_potential** out);
ds_status ds_potential_classify(const ds_potential* q, double tol, int* even, int* odd, int* real);
/* L2 distance on the union of both supports. */
ds_status ds_potential_distance(const ds_potential* q, const ds_potential* p, double* dist);

/* ---- forward scattering ---- */

/* a, b on nk nodes of [-kmax, kmax]. */
ds_status ds_forward(const ds_potential* q, double kmax, int nk, double tol, ds_table** out);
/* max ||a|^2 - |b|^2 - 1| over the table. */
ds_status ds_table_unitarity(const ds_table* t, double* defect);
/* Relative residuals of the even, odd and real functional equations of b. */
ds_status ds_b_class(const ds_potential* q, double kmax, int nk, double* even, double* odd,
                     double* real);

ds_status ds_table_from_arrays(int n, const double* k, const double* a_re, const double* a_im,
                               const double* b_re, const double* b_im, ds_table** out);
ds_status ds_table_read(const char* path, ds_table** out);
ds_status ds_table_write(const ds_table* t, const char* path);
void ds_table_free(ds_table* t);
int ds_table_size(const ds_table* t);
ds_status ds_table_get(const ds_table* t, double* k, double* a_re, double* a_im, double* b_re,
                       double* b_im);

/* ---- zeros ---- */

/* Resonances (zeros of a) in the rectangle {re_lo, re_hi, im_lo, im_hi};
   rect = NULL uses [-40/gamma, 40/gamma] x [-12/gamma, 0). */
ds_status ds_resonances(const ds_potential* q, const double* rect, ds_zeros** out);
/* Zeros of b with |Re k| <= radius and |Im k| <= 12/gamma. */
ds_status ds_b_zeros(const ds_potential* q, double radius, ds_zeros** out);
ds_status ds_zeros_read(const char* path, ds_zeros** out);
ds_status ds_zeros_write(const ds_zeros* z, const char* path);
void ds_zeros_free(ds_zeros* z);
int ds_zeros_count(const ds_zeros* z);
ds_status ds_zeros_get(const ds_zeros* z, int i, double* re, double* im, int* mult);
/* N+(r, delta), N-(r, delta) per radius (arrays of nr entries) and the fitted slope. */
ds_status ds_counting(const ds_zeros* z, const double* radii, int nr, double delta, int* plus,
                      int* minus, double* slope);
/* Smallest C with 2 gamma Im k <= ln(eps + C/|k|) and the number of zeros with Im k > -depth. */
ds_status ds_forbidden(const ds_zeros* z, double gamma, double eps, double depth, double* C,
                       int* shallow);

/* ---- inversion ---- */

/* side: left, right. from: reflection (r from the a and b columns) or b
   (a rebuilt from |b|). The result lives on [0, gamma] with n nodes. */
ds_status ds_invert(const ds_table* t, const char* side, const char* from, double gamma, int n,
                    ds_potential** out, double* condition);

/* ---- factorization ---- */

/* Table with the a column replaced by the outer function built from |b|. */
ds_status ds_a_from_b(const ds_table* t, ds_table** out);
ds_status ds_xi_of(const ds_potential* q, double radius, ds_xi** out);
ds_status ds_xi_read(const char* path, ds_xi** out);
ds_status ds_xi_write(const ds_xi* xi, const char* path);
void ds_xi_free(ds_xi* xi);
/* defined = 0 for b identically zero. */
ds_status ds_xi_get(const ds_xi* xi, int* defined, double* xi0_re, double* xi0_im, int* p,
                    int* count);
ds_status ds_xi_signs(const ds_xi* xi, int* signs);
/* b from a(q) and the sign data by the product over |zeta| <= radius; the table
   holds a(q) and the rebuilt b. convergence: R versus R/2 estimate. */
ds_status ds_b_from_a(const ds_potential* q, const ds_xi* xi, double radius, double kmax, int nk,
                      ds_table** out, double* convergence);
/* Flip the listed non-real zeros of b (indices into the modulus-sorted list of
   non-real zeros with |Re| <= radius), multiply by e^{i alpha}, and invert
   with a held fixed. */
ds_status ds_iso(const ds_potential* q, const int* flip, int nflip, double alpha, double radius,
                 int n, ds_potential** out);
/* Move a zero of b from z_from to z_to (remove = 1 drops it) and invert. */
ds_status ds_shift_zero(const ds_potential* q, double from_re, double from_im, int remove,
                        double to_re, double to_im, int n, ds_potential** out);
/* Move the resonance pair {k_from, -conj k_from} to {k_to, -conj k_to}; the
   table holds a' and the b rebuilt from a' and the sign data of q. */
ds_status ds_shift_resonance(const ds_potential* q, double from_re, double from_im, double to_re,
                             double to_im, double radius, double kmax, int nk, ds_table** out);

/* ---- canonical systems ---- */

ds_status ds_hamiltonian_of(const ds_potential* q, ds_hamiltonian** out);
ds_status ds_hamiltonian_potential(const ds_hamiltonian* h, ds_potential** out);
/* h0 on the uniform theta grid; C = {c11, c12, c22}; reassembly error max |h - rho C^T h0 C|. */
ds_status ds_hamiltonian_normalize(const ds_hamiltonian* h, ds_hamiltonian** h0, double* C,
                                   double* reassembly_error);
ds_status ds_hamiltonian_scattering(const ds_hamiltonian* h, double kmax, int nk, ds_table** out);
ds_status ds_hamiltonian_read(const char* path, ds_hamiltonian** out);
ds_status ds_hamiltonian_write(const ds_hamiltonian* h, const char* path);
void ds_hamiltonian_free(ds_hamiltonian* h);
int ds_hamiltonian_size(const ds_hamiltonian* h);
ds_status ds_hamiltonian_get(const ds_hamiltonian* h, double* x, double* h11, double* h12,
                             double* h22);

/* ---- action, angle, NLS flow ---- */

/* On nk nodes of [-kmax, kmax]: direct (1/pi) log|a| and the resonance series
   with tail correction over |k_n| <= radius. Arrays of nk entries. */
ds_status ds_action(const ds_potential* q, double kmax, int nk, double radius, double* k,
                    double* direct, double* series, double* tail_estimate);
/* Angle from the zero data and directly from arg b, both plus 4 k^2 t; valid
   is 0 on real zeros of b. */
ds_status ds_angle(const ds_potential* q, double kmax, int nk, double t, double radius, double* k,
                   double* formula, double* direct, int* valid);
/* q_t on the window where the evolved kernel exceeds 1e-6 of its maximum. */
ds_status ds_evolve(const ds_potential* q, double t, ds_potential** out, double* window_lo,
                    double* window_hi, double* tail_ratio);

/* ---- files ---- */

ds_status ds_write_columns(const char* path, int n, const double* x, const double* y);
/* Sidecar path.meta with key/value pairs plus version and timestamp. */
ds_status ds_write_meta(const char* path, const char* const* keys, const char* const* values,
                        int count);

#ifdef __cplusplus
}
#endif

#endif
