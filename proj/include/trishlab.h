#ifndef TRISHLAB_H
#define TRISHLAB_H

/*
 * C API of the trishlab shared library.
 *
 * The library simulates Tikhonov-regularized inertial gradient dynamics with
 * Hessian-driven damping, monitors their Lyapunov energies and extracts
 * empirical convergence rates.
 *
 * All functions return TRISHLAB_OK (0) on success or a nonzero status code;
 * trishlab_last_error() describes the most recent failure on the calling
 * thread. Objects are created behind opaque handles and released with their
 * matching *_free function. Handles are immutable after creation and may be
 * shared across threads.
 */

#include <stddef.h>

#if defined(_WIN32) && defined(TRISHLAB_SHARED)
#  ifdef TRISHLAB_BUILD
#    define TRISHLAB_API __declspec(dllexport)
#  else
#    define TRISHLAB_API __declspec(dllimport)
#  endif
#else
#  define TRISHLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum trishlab_status {
    TRISHLAB_OK = 0,
    TRISHLAB_ERR_INVALID_ARGUMENT = 1,
    TRISHLAB_ERR_DOMAIN_VIOLATION = 2,
    TRISHLAB_ERR_NONCONVERGENCE = 3,
    TRISHLAB_ERR_SCHEDULE_UNDERFLOW = 4,
    TRISHLAB_ERR_BETA_ZERO = 5,
    TRISHLAB_ERR_WRONG_SCHEDULE_KIND = 6,
    TRISHLAB_ERR_INFEASIBLE_DELTA = 7,
    TRISHLAB_ERR_MISSING_MIN_NORM = 8,
    TRISHLAB_ERR_INSUFFICIENT_SAMPLES = 9,
    TRISHLAB_ERR_NONPOSITIVE_QUANTITY = 10,
    TRISHLAB_ERR_IO = 11,
    TRISHLAB_ERR_INTERNAL = 12
} trishlab_status;

TRISHLAB_API const char* trishlab_version(void);

/* Message describing the last error on this thread. Never NULL. */
TRISHLAB_API const char* trishlab_last_error(void);

/* ------------------------------------------------------------ objectives */

typedef struct trishlab_objective trishlab_objective;

/* id: "f1" | "f2" */
TRISHLAB_API int trishlab_objective_builtin(const char* id, trishlab_objective** out);

/* f(x) = 0.5 x'Ax - b'x, A symmetric PSD in row-major order. */
TRISHLAB_API int trishlab_objective_quadratic(int dim, const double* a_rowmajor, const double* b,
                                              trishlab_objective** out);

TRISHLAB_API int trishlab_objective_dim(const trishlab_objective* obj, int* dim);
TRISHLAB_API int trishlab_objective_value(const trishlab_objective* obj, const double* x,
                                          double* out);
TRISHLAB_API int trishlab_objective_gradient(const trishlab_objective* obj, const double* x,
                                             double* out);
TRISHLAB_API int trishlab_objective_hess_vec(const trishlab_objective* obj, const double* x,
                                             const double* v, double* out);
/* *has is 0 when the minimum-norm solution is unknown; out may be NULL then. */
TRISHLAB_API int trishlab_objective_min_norm(const trishlab_objective* obj, double* out,
                                             int* has);
TRISHLAB_API void trishlab_objective_free(trishlab_objective* obj);

/* ------------------------------------------------------------- schedules */

typedef struct trishlab_schedule trishlab_schedule;
typedef double (*trishlab_schedule_fn)(double t, void* user);

/* eps(t) = t^-r, 0 < r <= 2. */
TRISHLAB_API int trishlab_schedule_power(double r, trishlab_schedule** out);

/* Analytic custom schedule; both callbacks are required. */
TRISHLAB_API int trishlab_schedule_custom(trishlab_schedule_fn eps, trishlab_schedule_fn eps_dot,
                                          void* user, double t_min, trishlab_schedule** out);

TRISHLAB_API int trishlab_schedule_eps(const trishlab_schedule* sched, double t, double* out);
TRISHLAB_API int trishlab_schedule_eps_dot(const trishlab_schedule* sched, double t, double* out);
TRISHLAB_API void trishlab_schedule_free(trishlab_schedule* sched);

/* -------------------------------------------------------------- dynamics */

typedef struct trishlab_dynamics trishlab_dynamics;

/* variant: "trigs" | "trish" | "trishe" | "general:<p>" (beta ignored for trigs) */
TRISHLAB_API int trishlab_dynamics_create(const char* variant, double delta, double beta,
                                          trishlab_dynamics** out);
TRISHLAB_API void trishlab_dynamics_free(trishlab_dynamics* dyn);

/* Solves grad f(x) + eps x = 0. x_out has the objective dimension. */
TRISHLAB_API int trishlab_viscosity_point(const trishlab_objective* obj, double eps,
                                          double* x_out, double* residual, int* iterations);

/* ------------------------------------------------------------ integration */

typedef struct trishlab_trajectory trishlab_trajectory;

typedef struct trishlab_integrator_config {
    int adaptive;             /* 0: fixed RK4, 1: embedded RK45 (default) */
    double h_init;            /* <=0 for default 1e-3 */
    double abs_tol, rel_tol;  /* <=0 for default 1e-9 */
    double t_end;
    int record_log_per_decade; /* >0: log-spaced samples per decade */
    double record_interval;    /* >0: fixed-interval sampling (wins if both set) */
    long max_steps;            /* <=0 for default */
} trishlab_integrator_config;

TRISHLAB_API void trishlab_integrator_config_default(trishlab_integrator_config* cfg);

TRISHLAB_API int trishlab_integrate(const trishlab_dynamics* dyn, const trishlab_objective* obj,
                                    const trishlab_schedule* sched, double t0, const double* x0,
                                    const double* v0, const trishlab_integrator_config* cfg,
                                    trishlab_trajectory** out);

/* Integrates the equivalent first-order (x,y) system (trishe only) from the
 * lifted initial data matching (x0, v0). */
TRISHLAB_API int trishlab_integrate_first_order(const trishlab_dynamics* dyn,
                                                const trishlab_objective* obj,
                                                const trishlab_schedule* sched, double t0,
                                                const double* x0, const double* v0,
                                                const trishlab_integrator_config* cfg,
                                                trishlab_trajectory** out);

TRISHLAB_API int trishlab_trajectory_size(const trishlab_trajectory* traj, int* n);
TRISHLAB_API int trishlab_trajectory_dim(const trishlab_trajectory* traj, int* dim);
TRISHLAB_API int trishlab_trajectory_sample(const trishlab_trajectory* traj, int i, double* t,
                                            double* x, double* v);
/* "reached_t_end" | "max_steps" | "domain_exit" | "step_underflow" */
TRISHLAB_API int trishlab_trajectory_termination(const trishlab_trajectory* traj,
                                                 const char** name);
TRISHLAB_API void trishlab_trajectory_free(trishlab_trajectory* traj);

/* quantity: "fgap" | "dist_xeps_sq" | "dist_xstar" | "vel_grad_combo" | "gradnorm".
 * Two-call pattern: pass t=q=NULL to size *n, then buffers of that length. */
TRISHLAB_API int trishlab_trajectory_quantity(const trishlab_trajectory* traj,
                                              const trishlab_objective* obj,
                                              const trishlab_schedule* sched,
                                              const trishlab_dynamics* dyn, const char* quantity,
                                              double* t, double* q, int* n);

/* --------------------------------------------------------------- monitor */

typedef struct trishlab_report trishlab_report;

typedef struct trishlab_lyapunov_params {
    double lambda;  /* <0 for the proof-constraints midpoint default */
    double a;       /* <=0 for default 2 */
    double c;       /* <=0 for default 4 */
    int strict_mode; /* 0: proof constraints, 1: literal definition */
} trishlab_lyapunov_params;

/* Energy pass over a trajectory. The report owns per-sample records and the
 * violation statistics; trajectory CSV emission picks the records up when the
 * report handle is passed alongside. */
TRISHLAB_API int trishlab_monitor(const trishlab_trajectory* traj, const trishlab_objective* obj,
                                  const trishlab_schedule* sched, const trishlab_dynamics* dyn,
                                  const trishlab_lyapunov_params* params, trishlab_report** out);

/* Serialized JSON document; the pointer stays owned by the report. */
TRISHLAB_API int trishlab_report_json(const trishlab_report* rep, const char** json);
TRISHLAB_API void trishlab_report_free(trishlab_report* rep);

/* Growth-condition lambda interval and activation time. Empty intervals
 * report lambda_lo >= lambda_hi; *has_t1 is 0 when t1 is undefined. The
 * schedule may be NULL when t1 is not wanted. */
TRISHLAB_API int trishlab_hp_feasible(double p, double delta,
                                      const trishlab_lyapunov_params* params,
                                      const trishlab_schedule* sched, double beta,
                                      double* lambda_lo, double* lambda_hi, double* t1,
                                      int* has_t1);

/* -------------------------------------------------------------- analysis */

/* Least-squares slope of log q against log t over [t_lo, t_hi]. */
TRISHLAB_API int trishlab_fit_rate(const double* t, const double* q, int n, double t_lo,
                                   double t_hi, double* slope, double* intercept, double* r2);

/* Ratio of sup t^exponent q over the window's last decade to its first. */
TRISHLAB_API int trishlab_bounded_ratio(const double* t, const double* q, int n, double exponent,
                                        double t_lo, double t_hi, double* max_first,
                                        double* max_last, double* ratio);

/* Trapezoid integral of t^weight q^2 and its fraction beyond the split. */
TRISHLAB_API int trishlab_integral_tail(const double* t, const double* q, int n, double weight,
                                        double split, double* total, double* tail_fraction);

TRISHLAB_API int trishlab_oscillation_count(const double* t, const double* q, int n, double t_lo,
                                            double t_hi, int* count);

/* ------------------------------------------------------------------- io */

/* CSV with header t,x*,v*,fgap,gradnorm,eps,dist_xeps,dist_xstar,E_p,calE_p,
 * mu,G,vp_norm (17 significant digits). rep may be NULL (energy columns stay
 * empty). */
TRISHLAB_API int trishlab_trajectory_write_csv(const trishlab_trajectory* traj,
                                               const trishlab_objective* obj,
                                               const trishlab_schedule* sched,
                                               const trishlab_report* rep, const char* path);

/* Self-contained log-log SVG with one polyline per series. ns[k] points for
 * series k; ts/qs are arrays of per-series pointers. */
TRISHLAB_API int trishlab_svg_write(const char* path, const char* title, const char* xlabel,
                                    const char* ylabel, int n_series, const char* const* labels,
                                    const double* const* ts, const double* const* qs,
                                    const int* ns);

/* --------------------------------------------------------- verification */

typedef struct trishlab_suite_result trishlab_suite_result;

/* suite: "oracles" | "theorem6" | "heavyball" | "rates" | "lyapunov" |
 * "oscillation" | "all". threads caps parallel trajectory workers. */
TRISHLAB_API int trishlab_suite_run(const char* suite, int threads,
                                    trishlab_suite_result** out);
TRISHLAB_API int trishlab_suite_size(const trishlab_suite_result* res, int* n);
TRISHLAB_API int trishlab_suite_criterion(const trishlab_suite_result* res, int i,
                                          const char** id, const char** name, int* passed,
                                          const char** detail);
TRISHLAB_API void trishlab_suite_result_free(trishlab_suite_result* res);

#ifdef __cplusplus
}
#endif

#endif /* TRISHLAB_H */
