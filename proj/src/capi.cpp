#include "normball/normball.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include "normball/baselines.hpp"
#include "normball/errors.hpp"
#include "normball/grouped_vector.hpp"
#include "normball/projection.hpp"
#include "normball/regression.hpp"
#include "normball/rng.hpp"
#include "normball/single_ball.hpp"

using normball::BallSpec;
using normball::BaselineResult;
using normball::GroupedVector;
using normball::ProjectionResult;
using normball::Q;
using normball::Region;

namespace {

thread_local std::string g_last_error;

nb_status fail(nb_status code, const char* what) {
  g_last_error = what;
  return code;
}

nb_status translate(const std::exception& e) {
  if (dynamic_cast<const normball::invalid_radius_error*>(&e)) {
    return fail(NB_ERR_INVALID_RADIUS, e.what());
  }
  if (dynamic_cast<const normball::size_mismatch_error*>(&e)) {
    return fail(NB_ERR_SIZE_MISMATCH, e.what());
  }
  if (dynamic_cast<const normball::nonconvergence_error*>(&e)) {
    return fail(NB_ERR_NONCONVERGENCE, e.what());
  }
  if (dynamic_cast<const std::invalid_argument*>(&e)) {
    return fail(NB_ERR_INVALID_ARGUMENT, e.what());
  }
  return fail(NB_ERR_INTERNAL, e.what());
}

Q to_q(nb_qnorm q) { return q == NB_Q2 ? Q::Two : Q::Inf; }

nb_region to_c_region(Region r) {
  switch (r) {
    case Region::Inside: return NB_REGION_INSIDE;
    case Region::RegionI: return NB_REGION_I;
    case Region::RegionII: return NB_REGION_II;
    case Region::RegionIII: return NB_REGION_III;
    case Region::Origin: return NB_REGION_ORIGIN;
  }
  return NB_REGION_INSIDE;
}

}  // namespace

struct nb_vector {
  GroupedVector v;
};

struct nb_result {
  std::vector<double> x;
  std::vector<double> caps;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  nb_region region = NB_REGION_INSIDE;
  long iterations = 0;
  double residual = 0.0;
  int converged = 1;
  double final_change = 0.0;
  int has_caps = 0;
};

struct nb_rng {
  normball::Rng rng;
};

struct nb_regression {
  normball::SyntheticRegression data;
};

struct nb_trace {
  normball::SolveTrace trace;
};

extern "C" {

const char* nb_version(void) { return "0.1.0"; }

const char* nb_last_error(void) { return g_last_error.c_str(); }

nb_status nb_vector_create(const double* values, size_t n,
                           const size_t* group_sizes, size_t g,
                           nb_vector** out) {
  if (!values || !group_sizes || !out) {
    return fail(NB_ERR_INVALID_ARGUMENT, "null pointer argument");
  }
  try {
    auto v = new nb_vector{GroupedVector(
        std::vector<double>(values, values + n),
        std::vector<std::size_t>(group_sizes, group_sizes + g))};
    *out = v;
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void nb_vector_destroy(nb_vector* v) { delete v; }

size_t nb_vector_dim(const nb_vector* v) { return v ? v->v.dim() : 0; }

size_t nb_vector_num_groups(const nb_vector* v) {
  return v ? v->v.num_groups() : 0;
}

nb_status nb_vector_norms(const nb_vector* v, double* l1, double* l1_2,
                          double* l1_inf) {
  if (!v) return fail(NB_ERR_INVALID_ARGUMENT, "null vector");
  const normball::Norms nm = normball::norms(v->v);
  if (l1) *l1 = nm.l1;
  if (l1_2) *l1_2 = nm.l12;
  if (l1_inf) *l1_inf = nm.linf_group_sum;
  return NB_OK;
}

nb_status nb_project(const nb_vector* c, nb_qnorm q, double tau1, double tau2,
                     double eps_interval, double eps_residual,
                     nb_result** out) {
  if (!c || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    BallSpec spec{to_q(q), tau1, tau2};
    normball::ToleranceConfig tol;
    if (eps_interval > 0.0) tol.eps_interval = eps_interval;
    if (eps_residual > 0.0) tol.eps_residual = eps_residual;
    ProjectionResult res = normball::project_intersection(c->v, spec, tol);
    auto* r = new nb_result;
    r->x = std::move(res.x.values);
    r->caps = std::move(res.caps);
    r->has_caps = r->caps.empty() ? 0 : 1;
    r->lambda1 = res.duals.lambda1;
    r->lambda2 = res.duals.lambda2;
    r->region = to_c_region(res.region);
    r->iterations = res.iterations;
    r->residual = res.residual;
    *out = r;
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

nb_status nb_project_l1(const nb_vector* c, double tau, nb_result** out) {
  if (!c || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    normball::SingleBallResult res = normball::project_l1(c->v, tau);
    auto* r = new nb_result;
    r->lambda2 = res.threshold;
    r->region = res.threshold == 0.0 ? NB_REGION_INSIDE : NB_REGION_I;
    r->x = std::move(res.x.values);
    *out = r;
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

nb_status nb_project_l1q(const nb_vector* c, nb_qnorm q, double tau1,
                         nb_result** out) {
  if (!c || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    nb_result staged;
    if (q == NB_Q2) {
      normball::SingleBallResult res = normball::project_l12(c->v, tau1);
      staged.lambda1 = res.threshold;
      staged.region = res.threshold == 0.0 ? NB_REGION_INSIDE : NB_REGION_II;
      staged.x = std::move(res.x.values);
    } else {
      normball::LinfBallResult res = normball::project_l1inf(c->v, tau1);
      staged.lambda1 = res.lambda1;
      staged.region = res.lambda1 == 0.0 ? NB_REGION_INSIDE : NB_REGION_II;
      staged.x = std::move(res.x.values);
      staged.caps = std::move(res.caps);
      staged.has_caps = 1;
    }
    *out = new nb_result(std::move(staged));
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

nb_status nb_classify(const nb_vector* c, nb_qnorm q, double tau1, double tau2,
                      nb_region* out) {
  if (!c || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    if (tau1 < 0.0 || tau2 < 0.0) {
      throw normball::invalid_radius_error("ball radii must be nonnegative");
    }
    if (tau1 == 0.0 || tau2 == 0.0) {
      *out = NB_REGION_ORIGIN;
      return NB_OK;
    }
    auto reflected = normball::reflect_to_positive(c->v);
    BallSpec spec{to_q(q), tau1, tau2};
    *out = to_c_region(normball::classify_region(reflected.first, spec).region);
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

nb_status nb_dykstra(const nb_vector* c, nb_qnorm q, double tau1, double tau2,
                     int l1_first, double tol, long max_iters,
                     nb_result** out) {
  if (!c || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    BallSpec spec{to_q(q), tau1, tau2};
    BaselineResult res = normball::dykstra_project(
        c->v, spec,
        l1_first ? normball::SweepOrder::L1First
                 : normball::SweepOrder::L1qFirst,
        tol, max_iters);
    auto* r = new nb_result;
    r->x = std::move(res.x.values);
    r->iterations = res.iterations;
    r->converged = res.converged ? 1 : 0;
    r->final_change = res.final_change;
    *out = r;
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

nb_status nb_admm(const nb_vector* c, nb_qnorm q, double tau1, double tau2,
                  double rho, double tol, long max_iters, nb_result** out) {
  if (!c || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    BallSpec spec{to_q(q), tau1, tau2};
    BaselineResult res =
        normball::admm_project(c->v, spec, rho, tol, max_iters);
    auto* r = new nb_result;
    r->x = std::move(res.x.values);
    r->iterations = res.iterations;
    r->converged = res.converged ? 1 : 0;
    r->final_change = res.final_change;
    *out = r;
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void nb_result_destroy(nb_result* r) { delete r; }

size_t nb_result_dim(const nb_result* r) { return r ? r->x.size() : 0; }

nb_status nb_result_x(const nb_result* r, double* out, size_t n) {
  if (!r || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  if (n != r->x.size()) {
    return fail(NB_ERR_SIZE_MISMATCH, "buffer size does not match result");
  }
  std::memcpy(out, r->x.data(), n * sizeof(double));
  return NB_OK;
}

double nb_result_lambda1(const nb_result* r) { return r ? r->lambda1 : 0.0; }
double nb_result_lambda2(const nb_result* r) { return r ? r->lambda2 : 0.0; }
nb_region nb_result_region(const nb_result* r) {
  return r ? r->region : NB_REGION_INSIDE;
}
long nb_result_iterations(const nb_result* r) { return r ? r->iterations : 0; }
double nb_result_residual(const nb_result* r) { return r ? r->residual : 0.0; }
int nb_result_converged(const nb_result* r) { return r ? r->converged : 0; }
double nb_result_final_change(const nb_result* r) {
  return r ? r->final_change : 0.0;
}
int nb_result_has_caps(const nb_result* r) { return r ? r->has_caps : 0; }

nb_status nb_result_caps(const nb_result* r, double* out, size_t g) {
  if (!r || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  if (!r->has_caps) {
    return fail(NB_ERR_INVALID_ARGUMENT, "result carries no caps");
  }
  if (g != r->caps.size()) {
    return fail(NB_ERR_SIZE_MISMATCH, "buffer size does not match cap count");
  }
  std::memcpy(out, r->caps.data(), g * sizeof(double));
  return NB_OK;
}

nb_status nb_rng_create(uint64_t seed, nb_rng** out) {
  if (!out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  *out = new nb_rng{normball::Rng(seed)};
  return NB_OK;
}

void nb_rng_destroy(nb_rng* r) { delete r; }

nb_status nb_rng_uniform(nb_rng* r, double lo, double hi, double* out,
                         size_t n) {
  if (!r || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  if (!(lo <= hi)) return fail(NB_ERR_INVALID_ARGUMENT, "need lo <= hi");
  for (size_t i = 0; i < n; ++i) out[i] = r->rng.uniform(lo, hi);
  return NB_OK;
}

nb_status nb_region_tally(nb_qnorm q, size_t g, size_t n, double tau1,
                          double tau2, double lo, double hi, size_t samples,
                          uint64_t seed, size_t counts[4]) {
  if (!counts) return fail(NB_ERR_INVALID_ARGUMENT, "null counts");
  if (g == 0 || n == 0 || g > n) {
    return fail(NB_ERR_INVALID_ARGUMENT, "need 1 <= g <= n");
  }
  if (!(lo <= hi)) return fail(NB_ERR_INVALID_ARGUMENT, "need lo <= hi");
  try {
    if (tau1 <= 0.0 || tau2 <= 0.0) {
      throw normball::invalid_radius_error("radii must be positive");
    }
    // Near-equal contiguous split: the first n % g groups get one extra.
    std::vector<std::size_t> sizes(g, n / g);
    for (size_t i = 0; i < n % g; ++i) ++sizes[i];

    BallSpec spec{to_q(q), tau1, tau2};
    normball::Rng rng(seed);
    std::vector<double> buf(n);
    counts[0] = counts[1] = counts[2] = counts[3] = 0;
    for (size_t s = 0; s < samples; ++s) {
      for (size_t i = 0; i < n; ++i) buf[i] = rng.uniform(lo, hi);
      GroupedVector point(buf, sizes);
      auto reflected = normball::reflect_to_positive(point);
      const Region region =
          normball::classify_region(reflected.first, spec).region;
      switch (region) {
        case Region::Inside: ++counts[0]; break;
        case Region::RegionI: ++counts[1]; break;
        case Region::RegionII: ++counts[2]; break;
        default: ++counts[3]; break;
      }
    }
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

nb_status nb_regression_create(nb_problem_size size, nb_qnorm q, uint64_t seed,
                               nb_regression** out) {
  if (!out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    auto* p = new nb_regression{normball::generate_synthetic_regression(
        size == NB_SIZE_SMALL ? normball::ProblemSize::Small
                              : normball::ProblemSize::Medium,
        to_q(q), seed)};
    *out = p;
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void nb_regression_destroy(nb_regression* p) { delete p; }

size_t nb_regression_dim(const nb_regression* p) {
  return p ? static_cast<size_t>(p->data.problem.X.cols()) : 0;
}

size_t nb_regression_observations(const nb_regression* p) {
  return p ? static_cast<size_t>(p->data.problem.X.rows()) : 0;
}

size_t nb_regression_num_groups(const nb_regression* p) {
  return p ? p->data.problem.groups.size() : 0;
}

double nb_regression_tau1(const nb_regression* p) {
  return p ? p->data.problem.spec.tau1 : 0.0;
}

double nb_regression_tau2(const nb_regression* p) {
  return p ? p->data.problem.spec.tau2 : 0.0;
}

nb_status nb_regression_true_w(const nb_regression* p, double* out, size_t n) {
  if (!p || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  if (n != p->data.true_w.dim()) {
    return fail(NB_ERR_SIZE_MISMATCH, "buffer size does not match dimension");
  }
  std::memcpy(out, p->data.true_w.values.data(), n * sizeof(double));
  return NB_OK;
}

nb_status nb_regression_solve(const nb_regression* p, nb_solver solver,
                              double tol, long max_iters, nb_trace** out) {
  if (!p || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  try {
    normball::SolveTrace trace =
        solver == NB_SOLVER_PG
            ? normball::pg_solve(p->data.problem, tol, max_iters)
            : normball::nesterov_solve(p->data.problem, tol, max_iters);
    *out = new nb_trace{std::move(trace)};
    return NB_OK;
  } catch (const std::exception& e) {
    return translate(e);
  }
}

void nb_trace_destroy(nb_trace* t) { delete t; }

long nb_trace_iterations(const nb_trace* t) {
  return t ? t->trace.iterations : 0;
}

int nb_trace_converged(const nb_trace* t) {
  return t && t->trace.converged ? 1 : 0;
}

double nb_trace_step_size(const nb_trace* t) {
  return t ? t->trace.step_size_used : 0.0;
}

double nb_trace_final_objective(const nb_trace* t) {
  return t && !t->trace.objective.empty() ? t->trace.objective.back() : 0.0;
}

size_t nb_trace_objective_count(const nb_trace* t) {
  return t ? t->trace.objective.size() : 0;
}

nb_status nb_trace_objectives(const nb_trace* t, double* out, size_t count) {
  if (!t || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  if (count != t->trace.objective.size()) {
    return fail(NB_ERR_SIZE_MISMATCH, "buffer size does not match trace");
  }
  std::memcpy(out, t->trace.objective.data(), count * sizeof(double));
  return NB_OK;
}

nb_status nb_trace_w(const nb_trace* t, double* out, size_t n) {
  if (!t || !out) return fail(NB_ERR_INVALID_ARGUMENT, "null argument");
  if (n != t->trace.final_w.dim()) {
    return fail(NB_ERR_SIZE_MISMATCH, "buffer size does not match dimension");
  }
  std::memcpy(out, t->trace.final_w.values.data(), n * sizeof(double));
  return NB_OK;
}

double nb_trace_max_violation_l1q(const nb_trace* t) {
  return t ? std::max(0.0, t->trace.max_violation_l1q) : 0.0;
}

double nb_trace_max_violation_l1(const nb_trace* t) {
  return t ? std::max(0.0, t->trace.max_violation_l1) : 0.0;
}

}  // extern "C"
