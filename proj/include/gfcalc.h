/* gfcalc — C API for the generalized-function calculus library.
 *
 * All objects are opaque handles created and destroyed through this surface.
 * Functions return gfc_status; on failure the thread-local message from
 * gfc_last_error() describes what went wrong. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * gfc_string_free(). Unbounded interval ends are encoded as +/-HUGE_VAL.
 */

#ifndef GFCALC_H
#define GFCALC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GFC_OK = 0,
  GFC_ERR_ARGUMENT = 1,
  GFC_ERR_PARSE = 2,
  GFC_ERR_NUMERIC = 3,
  GFC_ERR_DOMAIN = 4
} gfc_status;

/* Three-valued classifier verdicts. */
typedef enum { GFC_NO = 0, GFC_YES = 1, GFC_INCONCLUSIVE = 2 } gfc_verdict;

/* Plot-family classification. */
typedef enum {
  GFC_PLOT_OF_D = 0,
  GFC_PLOT_POINTWISE_ONLY = 1,
  GFC_PLOT_NOT_POINTWISE = 2
} gfc_plot_class;

/* Support kinds reported for expression trees and slices. */
typedef enum { GFC_SUPPORT_EMPTY = 0, GFC_SUPPORT_INTERVAL = 1, GFC_SUPPORT_ALL = 2 } gfc_support_kind;

typedef struct gfc_grid gfc_grid;
typedef struct gfc_settings gfc_settings;
typedef struct gfc_net gfc_net;
typedef struct gfc_smoothfn gfc_smoothfn;
typedef struct gfc_dist gfc_dist;
typedef struct gfc_mollifier gfc_mollifier;
typedef struct gfc_schedule gfc_schedule;
typedef struct gfc_genfunction gfc_genfunction;
typedef struct gfc_genpoint gfc_genpoint;
typedef struct gfc_fullrep gfc_fullrep;
typedef struct gfc_panel gfc_panel;
typedef struct gfc_plotfamily gfc_plotfamily;

const char* gfc_version(void);
const char* gfc_last_error(void);
void gfc_string_free(char* s);

/* --- eps grids ------------------------------------------------------- */

gfc_status gfc_grid_default(int k_min, int k_max, gfc_grid** out);
gfc_status gfc_grid_size(const gfc_grid* g, size_t* out);
gfc_status gfc_grid_value(const gfc_grid* g, size_t index, double* out);
void gfc_grid_free(gfc_grid* g);

/* --- classifier settings ---------------------------------------------- */

gfc_status gfc_settings_create(gfc_settings** out);
/* Keys: window, r2_min, zero_floor, n_cap, m_max, m_cap, sup_points, quad_tol. */
gfc_status gfc_settings_set(gfc_settings* s, const char* key, double value);
void gfc_settings_free(gfc_settings* s);

/* --- generalized numbers (nets over eps) ------------------------------ */

gfc_status gfc_net_parse(const char* expr, gfc_net** out);
gfc_status gfc_net_constant(double value, gfc_net** out);
gfc_status gfc_net_eval(const gfc_net* n, double eps, double* out);
gfc_status gfc_net_add(const gfc_net* a, const gfc_net* b, gfc_net** out);
gfc_status gfc_net_sub(const gfc_net* a, const gfc_net* b, gfc_net** out);
gfc_status gfc_net_mul(const gfc_net* a, const gfc_net* b, gfc_net** out);
gfc_status gfc_net_neg(const gfc_net* a, gfc_net** out);
gfc_status gfc_net_abs(const gfc_net* a, gfc_net** out);
gfc_status gfc_net_inf(const gfc_net* a, const gfc_net* b, gfc_net** out);
gfc_status gfc_net_sup(const gfc_net* a, const gfc_net* b, gfc_net** out);
void gfc_net_free(gfc_net* n);

/* Least-squares order of the net; report_json may be NULL. */
gfc_status gfc_net_order(const gfc_net* n, const gfc_grid* grid, const gfc_settings* s,
                         double* slope, double* r2, char** report_json);
/* CSV rows (eps, value_sign, log_abs). */
gfc_status gfc_net_samples_csv(const gfc_net* n, const gfc_grid* grid, char** csv);

gfc_status gfc_net_eq(const gfc_net* a, const gfc_net* b, const gfc_grid* grid,
                      const gfc_settings* s, gfc_verdict* out);
gfc_status gfc_net_leq(const gfc_net* a, const gfc_net* b, const gfc_grid* grid,
                       const gfc_settings* s, gfc_verdict* out);
gfc_status gfc_net_strict_lt(const gfc_net* a, const gfc_net* b, const gfc_grid* grid,
                             const gfc_settings* s, gfc_verdict* out);
gfc_status gfc_net_invertible(const gfc_net* a, const gfc_grid* grid, const gfc_settings* s,
                              gfc_verdict* out);
gfc_status gfc_net_infinitesimal(const gfc_net* a, const gfc_grid* grid, const gfc_settings* s,
                                 gfc_verdict* out);
gfc_status gfc_net_approx(const gfc_net* a, const gfc_net* b, const gfc_grid* grid,
                          const gfc_settings* s, gfc_verdict* out);
gfc_status gfc_net_ball(const gfc_net* center, const gfc_net* rho, const gfc_net* y,
                        const gfc_grid* grid, const gfc_settings* s, gfc_verdict* out);

/* --- smooth functions -------------------------------------------------- */

gfc_status gfc_smoothfn_parse(const char* expr, gfc_smoothfn** out);
gfc_status gfc_smoothfn_eval(const gfc_smoothfn* f, double x, double* out);
gfc_status gfc_smoothfn_deriv(const gfc_smoothfn* f, int k, gfc_smoothfn** out);
gfc_status gfc_smoothfn_integrate(const gfc_smoothfn* f, double a, double b, double tol,
                                  double* out);
gfc_status gfc_smoothfn_sup_abs(const gfc_smoothfn* f, double k_lo, double k_hi, int n,
                                double* out);
gfc_status gfc_smoothfn_support(const gfc_smoothfn* f, gfc_support_kind* kind, double* lo,
                                double* hi);
gfc_status gfc_smoothfn_scale(const gfc_smoothfn* f, double eps, gfc_smoothfn** out);
gfc_status gfc_smoothfn_translate(const gfc_smoothfn* f, double x0, gfc_smoothfn** out);
gfc_status gfc_smoothfn_moments(const gfc_smoothfn* f, int q, double* out_values /* q+1 */);
gfc_status gfc_smoothfn_to_json(const gfc_smoothfn* f, char** out);
gfc_status gfc_smoothfn_from_json(const char* json, gfc_smoothfn** out);
void gfc_smoothfn_free(gfc_smoothfn* f);

/* --- distributions ------------------------------------------------------ */

gfc_status gfc_dist_parse(const char* expr, gfc_dist** out);
gfc_status gfc_dist_pair(const gfc_dist* u, const gfc_smoothfn* phi, double tol, double* out);
gfc_status gfc_dist_derivative(const gfc_dist* u, gfc_dist** out);
gfc_status gfc_dist_convolve(const gfc_dist* u, const gfc_smoothfn* rho, gfc_smoothfn** out);
void gfc_dist_free(gfc_dist* u);

/* --- mollifiers and schedules ------------------------------------------ */

gfc_status gfc_mollifier_make(int q, gfc_mollifier** out);
gfc_status gfc_mollifier_fn(const gfc_mollifier* m, gfc_smoothfn** out);
gfc_status gfc_mollifier_l1_mass(const gfc_mollifier* m, double* out);
gfc_status gfc_mollifier_to_json(const gfc_mollifier* m, char** out);
void gfc_mollifier_free(gfc_mollifier* m);

gfc_status gfc_schedule_make(int q_max, gfc_schedule** out);
gfc_status gfc_schedule_make_custom(int q_max, const double* thresholds, size_t count,
                                    gfc_schedule** out);
gfc_status gfc_schedule_stage_at(const gfc_schedule* net, double eps, int* q_out,
                                 gfc_smoothfn** fn_out);
/* pass = every verified property holds (support, mass, moments, l1 <= 1+eta). */
gfc_status gfc_schedule_verify(const gfc_schedule* net, const gfc_grid* grid, double eta,
                               int* pass, char** report_json);
gfc_status gfc_schedule_to_json(const gfc_schedule* net, char** out);
gfc_status gfc_schedule_from_json(const char* json, gfc_schedule** out);
void gfc_schedule_free(gfc_schedule* net);

/* --- special algebra ----------------------------------------------------- */

gfc_status gfc_genfunction_sigma(const gfc_smoothfn* f, double omega_lo, double omega_hi,
                                 gfc_genfunction** out);
gfc_status gfc_genfunction_iota(const gfc_dist* u, const gfc_schedule* psi, double omega_lo,
                                double omega_hi, gfc_genfunction** out);
gfc_status gfc_genfunction_add(const gfc_genfunction* u, const gfc_genfunction* v,
                               gfc_genfunction** out);
gfc_status gfc_genfunction_sub(const gfc_genfunction* u, const gfc_genfunction* v,
                               gfc_genfunction** out);
gfc_status gfc_genfunction_mul(const gfc_genfunction* u, const gfc_genfunction* v,
                               gfc_genfunction** out);
gfc_status gfc_genfunction_partial(const gfc_genfunction* u, int k, gfc_genfunction** out);
gfc_status gfc_genfunction_compose_smooth(const gfc_smoothfn* g, const gfc_genfunction* u,
                                          gfc_genfunction** out);
gfc_status gfc_genfunction_rep(const gfc_genfunction* u, double eps, gfc_smoothfn** out);
void gfc_genfunction_free(gfc_genfunction* u);

gfc_status gfc_genfunction_moderate(const gfc_genfunction* u, double k_lo, double k_hi,
                                    int alpha_max, const gfc_grid* grid, const gfc_settings* s,
                                    gfc_verdict* out, char** report_json);
gfc_status gfc_genfunction_negligible(const gfc_genfunction* u, double k_lo, double k_hi,
                                      int alpha_max, const gfc_grid* grid, const gfc_settings* s,
                                      gfc_verdict* out, char** report_json);
gfc_status gfc_genfunction_eq(const gfc_genfunction* u, const gfc_genfunction* v, double k_lo,
                              double k_hi, int alpha_max, const gfc_grid* grid,
                              const gfc_settings* s, gfc_verdict* out, char** report_json);
/* CSV with columns eps, log_eps, alpha, sup, log_sup. */
gfc_status gfc_genfunction_sup_table(const gfc_genfunction* u, double k_lo, double k_hi,
                                     int alpha_max, const gfc_grid* grid, const gfc_settings* s,
                                     char** csv);

/* Net of values at a fixed standard point: eps -> u_eps(x0). */
gfc_status gfc_genfunction_value_net(const gfc_genfunction* u, double x0, gfc_net** out);

gfc_status gfc_genpoint_make(const gfc_net* net, double k_lo, double k_hi, double omega_lo,
                             double omega_hi, const gfc_grid* grid, gfc_genpoint** out);
void gfc_genpoint_free(gfc_genpoint* p);
gfc_status gfc_genfunction_eval_at(const gfc_genfunction* u, const gfc_genpoint* x,
                                   gfc_net** out);

gfc_status gfc_genfunction_cbounded(const gfc_genfunction* u, double k_lo, double k_hi,
                                    double omega2_lo, double omega2_hi, const gfc_grid* grid,
                                    const gfc_settings* s, gfc_verdict* out, double* witness_lo,
                                    double* witness_hi);
gfc_status gfc_genfunction_compose_cbounded(const gfc_genfunction* v, const gfc_genfunction* u,
                                            double k_lo, double k_hi, const gfc_grid* grid,
                                            const gfc_settings* s, gfc_genfunction** out);

gfc_status gfc_genfunction_shadow_pairing(const gfc_genfunction* u, const gfc_smoothfn* phi,
                                          double tol, gfc_net** out);
gfc_status gfc_genfunction_associates(const gfc_genfunction* u, const gfc_dist* w,
                                      const gfc_smoothfn* const* panel, size_t panel_size,
                                      const gfc_grid* grid, const gfc_settings* s,
                                      gfc_verdict* out, char** report_json);

/* --- full algebra --------------------------------------------------------- */

gfc_status gfc_fullrep_iota(const gfc_dist* u, double omega_lo, double omega_hi,
                            gfc_fullrep** out);
gfc_status gfc_fullrep_sigma(const gfc_smoothfn* f, double omega_lo, double omega_hi,
                             gfc_fullrep** out);
gfc_status gfc_fullrep_sub(const gfc_fullrep* a, const gfc_fullrep* b, gfc_fullrep** out);
gfc_status gfc_fullrep_eval(const gfc_fullrep* r, const gfc_smoothfn* phi, double x, double* out);
void gfc_fullrep_free(gfc_fullrep* r);

gfc_status gfc_omega_phi(const gfc_smoothfn* phi, double omega_lo, double omega_hi, int* present,
                         double* lo, double* hi);
gfc_status gfc_in_uomega(const gfc_smoothfn* phi, double x, double omega_lo, double omega_hi,
                         int* out);

gfc_status gfc_panel_make(int q, int size, uint64_t seed, gfc_panel** out);
gfc_status gfc_panel_size(const gfc_panel* p, size_t* out);
gfc_status gfc_panel_member(const gfc_panel* p, size_t index, gfc_smoothfn** out);
gfc_status gfc_panel_to_json(const gfc_panel* p, char** out);
void gfc_panel_free(gfc_panel* p);

gfc_status gfc_fullrep_moderate(const gfc_fullrep* r, double k_lo, double k_hi, int alpha_max,
                                int n_probe, int panel_size, uint64_t seed, const gfc_grid* grid,
                                const gfc_settings* s, gfc_verdict* out, int* level,
                                char** report_json);
gfc_status gfc_fullrep_negligible(const gfc_fullrep* r, double k_lo, double k_hi, int alpha_max,
                                  int m, int q_max, int panel_size, uint64_t seed,
                                  const gfc_grid* grid, const gfc_settings* s, gfc_verdict* out,
                                  int* level, char** report_json);

/* --- plot criteria ---------------------------------------------------------- */

gfc_status gfc_plotfamily_make(const char* kernel_expr, double u_lo, double u_hi, double omega_lo,
                               double omega_hi, gfc_plotfamily** out);
gfc_status gfc_plot_support_slice(const gfc_plotfamily* d, double u0, gfc_support_kind* kind,
                                  double* lo, double* hi);
gfc_status gfc_plot_pointwise(const gfc_plotfamily* d, int samples, gfc_verdict* out);
gfc_status gfc_plot_locally_uniform(const gfc_plotfamily* d, double u0, int shrink_steps,
                                    gfc_verdict* out);
gfc_status gfc_plot_uniform(const gfc_plotfamily* d, gfc_verdict* out);
gfc_status gfc_plot_classify(const gfc_plotfamily* d, gfc_plot_class* out, char** report_json);
gfc_status gfc_plot_check_k(const gfc_plotfamily* d, double k_lo, double k_hi, gfc_verdict* out);
void gfc_plotfamily_free(gfc_plotfamily* d);

#ifdef __cplusplus
}
#endif

#endif /* GFCALC_H */
