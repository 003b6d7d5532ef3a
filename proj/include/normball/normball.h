/*
 * C interface to the normball shared library.
 *
 * Every object handed out is an opaque handle owned by the caller and
 * released with the matching *_destroy function. Calls that can fail return
 * an nb_status; nb_last_error() holds a diagnostic for the most recent
 * failure on the calling thread.
 */
#ifndef NORMBALL_H
#define NORMBALL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef NB_API
#define NB_API __attribute__((visibility("default")))
#endif

typedef enum nb_status {
  NB_OK = 0,
  NB_ERR_INVALID_ARGUMENT = 1,
  NB_ERR_SIZE_MISMATCH = 2,
  NB_ERR_INVALID_RADIUS = 3,
  NB_ERR_NONCONVERGENCE = 4,
  NB_ERR_INTERNAL = 5
} nb_status;

typedef enum nb_qnorm { NB_Q2 = 0, NB_QINF = 1 } nb_qnorm;

/* Region labels: NB_REGION_I means only the l1 constraint is active,
 * NB_REGION_II only the l1,q constraint, NB_REGION_III both.
 * NB_REGION_ORIGIN marks the zero-radius short-circuit (x = 0). */
typedef enum nb_region {
  NB_REGION_INSIDE = 0,
  NB_REGION_I = 1,
  NB_REGION_II = 2,
  NB_REGION_III = 3,
  NB_REGION_ORIGIN = 4
} nb_region;

typedef struct nb_vector nb_vector;
typedef struct nb_result nb_result;
typedef struct nb_rng nb_rng;
typedef struct nb_regression nb_regression;
typedef struct nb_trace nb_trace;

NB_API const char* nb_version(void);
NB_API const char* nb_last_error(void);

/* ---- grouped vectors ------------------------------------------------- */

NB_API nb_status nb_vector_create(const double* values, size_t n,
                                  const size_t* group_sizes, size_t g,
                                  nb_vector** out);
NB_API void nb_vector_destroy(nb_vector* v);
NB_API size_t nb_vector_dim(const nb_vector* v);
NB_API size_t nb_vector_num_groups(const nb_vector* v);
NB_API nb_status nb_vector_norms(const nb_vector* v, double* l1, double* l1_2,
                                 double* l1_inf);

/* ---- projections ------------------------------------------------------ */

/* Exact projection onto the intersection of the l1,q ball (radius tau1) and
 * the l1 ball (radius tau2). Pass eps_interval/eps_residual <= 0 to use the
 * built-in defaults. */
NB_API nb_status nb_project(const nb_vector* c, nb_qnorm q, double tau1,
                            double tau2, double eps_interval,
                            double eps_residual, nb_result** out);

/* Single-ball projections. For nb_project_l1 the threshold is reported as
 * lambda2, for nb_project_l1q as lambda1; caps are attached for q = inf. */
NB_API nb_status nb_project_l1(const nb_vector* c, double tau, nb_result** out);
NB_API nb_status nb_project_l1q(const nb_vector* c, nb_qnorm q, double tau1,
                                nb_result** out);

NB_API nb_status nb_classify(const nb_vector* c, nb_qnorm q, double tau1,
                             double tau2, nb_region* out);

/* ---- alternating-projection baselines --------------------------------- */

NB_API nb_status nb_dykstra(const nb_vector* c, nb_qnorm q, double tau1,
                            double tau2, int l1_first, double tol,
                            long max_iters, nb_result** out);
NB_API nb_status nb_admm(const nb_vector* c, nb_qnorm q, double tau1,
                         double tau2, double rho, double tol, long max_iters,
                         nb_result** out);

/* ---- results ----------------------------------------------------------- */

NB_API void nb_result_destroy(nb_result* r);
NB_API size_t nb_result_dim(const nb_result* r);
NB_API nb_status nb_result_x(const nb_result* r, double* out, size_t n);
NB_API double nb_result_lambda1(const nb_result* r);
NB_API double nb_result_lambda2(const nb_result* r);
NB_API nb_region nb_result_region(const nb_result* r);
NB_API long nb_result_iterations(const nb_result* r);
NB_API double nb_result_residual(const nb_result* r);
/* Baseline results: 1 while the run met its tolerance. Projection results
 * always report 1. */
NB_API int nb_result_converged(const nb_result* r);
NB_API double nb_result_final_change(const nb_result* r);
NB_API int nb_result_has_caps(const nb_result* r);
NB_API nb_status nb_result_caps(const nb_result* r, double* out, size_t g);

/* ---- sampling and region tallies --------------------------------------- */

/* xoshiro256++ stream seeded via splitmix64; the same seed reproduces the
 * same values on every platform. */
NB_API nb_status nb_rng_create(uint64_t seed, nb_rng** out);
NB_API void nb_rng_destroy(nb_rng* r);
NB_API nb_status nb_rng_uniform(nb_rng* r, double lo, double hi, double* out,
                                size_t n);

/* Draws `samples` points with i.i.d. coordinates uniform in [lo, hi], splits
 * each into g near-equal contiguous groups, classifies it against the given
 * ball pair and accumulates counts indexed INSIDE, I, II, III. */
NB_API nb_status nb_region_tally(nb_qnorm q, size_t g, size_t n, double tau1,
                                 double tau2, double lo, double hi,
                                 size_t samples, uint64_t seed,
                                 size_t counts[4]);

/* ---- constrained least squares ----------------------------------------- */

typedef enum nb_problem_size {
  NB_SIZE_SMALL = 0,
  NB_SIZE_MEDIUM = 1
} nb_problem_size;

typedef enum nb_solver { NB_SOLVER_PG = 0, NB_SOLVER_NESTEROV = 1 } nb_solver;

NB_API nb_status nb_regression_create(nb_problem_size size, nb_qnorm q,
                                      uint64_t seed, nb_regression** out);
NB_API void nb_regression_destroy(nb_regression* p);
NB_API size_t nb_regression_dim(const nb_regression* p);
NB_API size_t nb_regression_observations(const nb_regression* p);
NB_API size_t nb_regression_num_groups(const nb_regression* p);
NB_API double nb_regression_tau1(const nb_regression* p);
NB_API double nb_regression_tau2(const nb_regression* p);
NB_API nb_status nb_regression_true_w(const nb_regression* p, double* out,
                                      size_t n);
NB_API nb_status nb_regression_solve(const nb_regression* p, nb_solver solver,
                                     double tol, long max_iters,
                                     nb_trace** out);

NB_API void nb_trace_destroy(nb_trace* t);
NB_API long nb_trace_iterations(const nb_trace* t);
NB_API int nb_trace_converged(const nb_trace* t);
NB_API double nb_trace_step_size(const nb_trace* t);
NB_API double nb_trace_final_objective(const nb_trace* t);
NB_API size_t nb_trace_objective_count(const nb_trace* t);
NB_API nb_status nb_trace_objectives(const nb_trace* t, double* out,
                                     size_t count);
NB_API nb_status nb_trace_w(const nb_trace* t, double* out, size_t n);
NB_API double nb_trace_max_violation_l1q(const nb_trace* t);
NB_API double nb_trace_max_violation_l1(const nb_trace* t);

#ifdef __cplusplus
}
#endif

#endif /* NORMBALL_H */
