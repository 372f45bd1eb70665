/* twistbeam — Bessel-mode twisted-light fields, hydrogen photoexcitation
 * amplitudes, and radiation forces on small particles.
 *
 * C interface of the shared library. All functions return tb_status;
 * outputs are written through pointers. Complex vectors are passed as
 * Cartesian re[3]/im[3] pairs. Lengths in Bohr radii (a0), wavenumbers in
 * 1/a0 (Hartree atomic units).
 */
#ifndef TWISTBEAM_H
#define TWISTBEAM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tb_status {
  TB_OK = 0,
  TB_ERROR_INVALID_ARGUMENT = 2, /* bad parameters / quantum numbers */
  TB_ERROR_PRECISION = 3,        /* quadrature or FD convergence failure */
  TB_ERROR_DOMAIN = 4,           /* argument outside supported domain */
  TB_ERROR_INTERNAL = 5
} tb_status;

/* Message for the most recent failure on this thread. */
const char* tb_last_error(void);

const char* tb_version(void);

/* ------------------------------------------------------------------ */
/* Special functions                                                   */

tb_status tb_bessel_j(int order, double x, double* out);
tb_status tb_sph_harm_phi0(int l, int m, double theta, double* out);
tb_status tb_hydrogen_radial(int n, int l, double r, double* out);
tb_status tb_hydrogen_radial_deriv(int n, int l, double r, double* out);
/* nodes/weights are caller-allocated arrays of length n; rule on [-1,1]. */
tb_status tb_gauss_legendre(int n, double* nodes, double* weights);
/* Photon wavenumber of the 1S -> nP hydrogen transition, 1/a0. */
tb_status tb_physical_wavenumber(int n_f, double* out);

/* ------------------------------------------------------------------ */
/* Bessel mode                                                         */

typedef struct tb_beam tb_beam; /* opaque */

tb_status tb_beam_create(double kappa, double k_z, int m_gamma, int lambda,
                         double e0, tb_beam** out);
tb_status tb_beam_create_pitch(double k_mag, double theta_k, int m_gamma,
                               int lambda, double e0, tb_beam** out);
void tb_beam_destroy(tb_beam* beam);
tb_status tb_beam_props(const tb_beam* beam, double* omega, double* theta_k,
                        double* wavelength);

tb_status tb_vector_potential(const tb_beam* beam, double rho, double phi,
                              double z, double re[3], double im[3]);
tb_status tb_electric_field(const tb_beam* beam, double rho, double phi,
                            double z, double re[3], double im[3]);
tb_status tb_magnetic_field(const tb_beam* beam, double rho, double phi,
                            double z, double re[3], double im[3]);
tb_status tb_te_mode(const tb_beam* beam, double rho, double phi, double z,
                     double re[3], double im[3]);
tb_status tb_tm_mode(const tb_beam* beam, double rho, double phi, double z,
                     double re[3], double im[3]);

/* out = { s_rho, s_phi, s_z }, closed form. */
tb_status tb_poynting_closed(const tb_beam* beam, double rho, double out[3]);
/* Time-averaged <E(t)^2> at a point. */
tb_status tb_mean_e_sq(const tb_beam* beam, double rho, double phi, double z,
                       double* out);

/* ------------------------------------------------------------------ */
/* Photoexcitation                                                     */

typedef struct tb_quadrature {
  int n_radial;
  int n_angular;
  double r_max; /* a0 */
} tb_quadrature;

/* Defaults for a 1S -> (n_f, l_f) transition: 96 x 48, r_max = 40 n_f^2. */
tb_status tb_quadrature_default(int n_f, tb_quadrature* out);

tb_status tb_atomic_factor_g(const tb_beam* beam, int n_f, int l_f, int m_f,
                             int lambda_pol, int exact_mass_factors,
                             const tb_quadrature* quad, double* re, double* im);

tb_status tb_amplitude_localized(const tb_beam* beam, int n_f, int l_f,
                                 int m_f, double b, double phi_b,
                                 int exact_mass_factors,
                                 const tb_quadrature* quad, double* re,
                                 double* im);

/* Amplitudes over the (m_f, b) product grid, row-major with b fastest.
 * re_out/im_out are caller-allocated arrays of length n_mf * n_b. */
tb_status tb_scan_amplitude(const tb_beam* beam, int n_f, int l_f,
                            const int* m_f_list, size_t n_mf,
                            const double* b_grid, size_t n_b,
                            int exact_mass_factors, const tb_quadrature* quad,
                            double* re_out, double* im_out);

typedef struct tb_cm_state tb_cm_state; /* opaque */

tb_status tb_cm_gaussian_ring(double b, double width, int m_R,
                              tb_cm_state** out);
/* L_Z eigenstate with a caller profile Y(R_perp, Z) (real, any scale;
 * normalized internally over the window). */
tb_status tb_cm_custom_profile(int m_R,
                               double (*profile)(double r_perp, double z,
                                                 void* ctx),
                               void* ctx, double r_lo, double r_hi,
                               double z_half, tb_cm_state** out);
void tb_cm_destroy(tb_cm_state* state);

tb_status tb_g_tilde(const tb_cm_state* initial, const tb_cm_state* final_st,
                     const tb_beam* beam, int delta_m,
                     const tb_quadrature* quad, double* re, double* im);

tb_status tb_amplitude_lz(const tb_beam* beam, int n_f, int l_f, int m_f,
                          int m_R, int m_R_prime, const tb_cm_state* initial,
                          const tb_cm_state* final_st, int exact_mass_factors,
                          const tb_quadrature* quad, double* re, double* im);

tb_status tb_amplitude_cm(const tb_beam* beam, int n_f, int l_f, int m_f,
                          const tb_cm_state* initial,
                          const tb_cm_state* final_st, int exact_mass_factors,
                          const tb_quadrature* quad, double* re, double* im);

/* ------------------------------------------------------------------ */
/* Forces                                                              */

/* fd_step <= 0 selects the default 5e-5 * (2 pi / omega). */
tb_status tb_force_dipole(const tb_beam* beam, double alpha_re,
                          double alpha_im, double rho, double phi, double z,
                          double fd_step, double out[3]);
tb_status tb_force_decomposition(const tb_beam* beam, double alpha_re,
                                 double alpha_im, double rho, double phi,
                                 double z, double fd_step, double total[3],
                                 double gradient[3], double poynting[3],
                                 double spin_curl[3]);
/* Row-major 3x3 time-averaged Maxwell stress tensor. */
tb_status tb_stress_tensor(const tb_beam* beam, double rho, double phi,
                           double z, double out[9]);
tb_status tb_disk_force(const tb_beam* beam, double radius, int n_radial_quad,
                        double* f_z);

/* ------------------------------------------------------------------ */
/* Self-verification                                                   */

/* suite: "basis" | "fields" | "dipole" | "forces" | "all".
 * *passed is 1/0; *json_report (optional, may be NULL) receives a report
 * string to release with tb_string_free. */
tb_status tb_verify_suite(const char* suite, double tol_scale, int* passed,
                          char** json_report);
void tb_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TWISTBEAM_H */
