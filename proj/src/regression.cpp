#include "normball/regression.hpp"

#include <cmath>
#include <stdexcept>

#include "normball/errors.hpp"
#include "normball/projection.hpp"
#include "normball/rng.hpp"

namespace normball {

namespace {

void check_problem(const RegressionProblem& p) {
  std::size_t total = 0;
  for (std::size_t s : p.groups) total += s;
  if (total != static_cast<std::size_t>(p.X.cols())) {
    throw size_mismatch_error("group sizes must sum to the column count of X");
  }
  if (p.X.rows() != p.y.size() || p.X.rows() < 1) {
    throw size_mismatch_error("X and y must have the same positive row count");
  }
  if (p.spec.tau1 <= 0.0 || p.spec.tau2 <= 0.0) {
    throw invalid_radius_error("regression constraint radii must be positive");
  }
}

// Largest eigenvalue of X^T X by 50 power iterations from a deterministic
// start; the Rayleigh quotient approaches the true value from below, so the
// caller pairs it with a 0.95 step safety factor.
double lipschitz_estimate(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.cols();
  if (n == 0 || X.squaredNorm() == 0.0) return 0.0;
  Eigen::VectorXd v =
      Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int k = 0; k < 50; ++k) {
    Eigen::VectorXd w = X.transpose() * (X * v);
    const double norm = w.norm();
    if (norm == 0.0) {
      // Start vector happened to be orthogonal to the range; perturb.
      v(k % n) += 1.0;
      v.normalize();
      continue;
    }
    v = w / norm;
  }
  return v.dot(X.transpose() * (X * v));
}

double objective(const RegressionProblem& p, const Eigen::VectorXd& w) {
  return 0.5 * (p.y - p.X * w).squaredNorm();
}

void track_violation(const RegressionProblem& p, const GroupedVector& w,
                     SolveTrace& trace) {
  const Norms nm = norms(w);
  const double l1q = p.spec.q == Q::Two ? nm.l12 : nm.linf_group_sum;
  trace.max_violation_l1q =
      std::max(trace.max_violation_l1q, l1q - p.spec.tau1);
  trace.max_violation_l1 = std::max(trace.max_violation_l1, nm.l1 - p.spec.tau2);
}

GroupedVector to_grouped(const Eigen::VectorXd& v,
                         const std::vector<std::size_t>& groups) {
  return GroupedVector(std::vector<double>(v.data(), v.data() + v.size()),
                       groups);
}

Eigen::VectorXd project_feasible(const RegressionProblem& p,
                                 const Eigen::VectorXd& v) {
  // Much tighter than the standalone defaults: projection jitter shows up
  // directly in the step-norm stopping test and in the descent property, so
  // drive the inner bisection near machine precision.
  ToleranceConfig tol;
  tol.eps_interval =
      1e-14 * std::max(1.0, v.size() > 0 ? v.cwiseAbs().maxCoeff() : 1.0);
  tol.eps_residual = 1e-13 * std::max(1.0, p.spec.tau2);
  const ProjectionResult res =
      project_intersection(to_grouped(v, p.groups), p.spec, tol);
  return Eigen::Map<const Eigen::VectorXd>(res.x.values.data(),
                                           static_cast<Eigen::Index>(res.x.dim()));
}

SolveTrace degenerate_zero_trace(const RegressionProblem& p) {
  SolveTrace trace;
  trace.final_w = GroupedVector(
      std::vector<double>(static_cast<std::size_t>(p.X.cols()), 0.0),
      p.groups);
  trace.objective.push_back(0.5 * p.y.squaredNorm());
  trace.converged = true;
  return trace;
}

}  // namespace

SolveTrace pg_solve(const RegressionProblem& p, double tol, long max_iters) {
  check_problem(p);
  const double lip = lipschitz_estimate(p.X);
  if (lip <= 0.0) return degenerate_zero_trace(p);
  const double eta = 0.95 / lip;

  SolveTrace trace;
  trace.step_size_used = eta;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p.X.cols());
  trace.objective.push_back(objective(p, w));

  GroupedVector w_grouped = to_grouped(w, p.groups);
  for (long it = 1; it <= max_iters; ++it) {
    const Eigen::VectorXd grad = p.X.transpose() * (p.X * w - p.y);
    const Eigen::VectorXd w_next = project_feasible(p, w - eta * grad);
    const double step_norm = (w_next - w).norm();
    w = w_next;
    trace.iterations = it;
    trace.objective.push_back(objective(p, w));
    w_grouped = to_grouped(w, p.groups);
    track_violation(p, w_grouped, trace);
    if (step_norm <= tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final_w = std::move(w_grouped);
  return trace;
}

SolveTrace nesterov_solve(const RegressionProblem& p, double tol,
                          long max_iters) {
  check_problem(p);
  const double lip = lipschitz_estimate(p.X);
  if (lip <= 0.0) return degenerate_zero_trace(p);
  const double eta = 0.95 / lip;

  SolveTrace trace;
  trace.step_size_used = eta;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p.X.cols());
  Eigen::VectorXd y_extr = w;
  double t = 1.0;
  trace.objective.push_back(objective(p, w));

  GroupedVector w_grouped = to_grouped(w, p.groups);
  for (long it = 1; it <= max_iters; ++it) {
    const Eigen::VectorXd grad = p.X.transpose() * (p.X * y_extr - p.y);
    const Eigen::VectorXd w_next = project_feasible(p, y_extr - eta * grad);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y_extr = w_next + ((t - 1.0) / t_next) * (w_next - w);
    const double step_norm = (w_next - w).norm();
    t = t_next;
    w = w_next;
    trace.iterations = it;
    trace.objective.push_back(objective(p, w));
    w_grouped = to_grouped(w, p.groups);
    track_violation(p, w_grouped, trace);
    if (step_norm <= tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final_w = std::move(w_grouped);
  return trace;
}

SyntheticRegression generate_synthetic_regression(ProblemSize size, Q q,
                                                  std::uint64_t seed) {
  const std::size_t block = size == ProblemSize::Small ? 10 : 100;
  const std::size_t n = 10 * block;
  const std::size_t rows = size == ProblemSize::Small ? 200 : 4000;
  const std::size_t nonzeros_tenths[10] = {10, 8, 6, 4, 2, 1, 0, 0, 0, 0};

  Rng rng(seed);

  // Coefficients: the first nonzeros-per-block entries of each block are
  // random +-1, the rest zero.
  std::vector<double> w(n, 0.0);
  for (std::size_t b = 0; b < 10; ++b) {
    const std::size_t nnz = nonzeros_tenths[b] * block / 10;
    for (std::size_t j = 0; j < nnz; ++j) {
      w[b * block + j] = (rng.next() & 1) ? 1.0 : -1.0;
    }
  }

  // Rows with correlation 0.2 inside a block: one shared factor per block.
  const double shared = std::sqrt(0.2);
  const double own = std::sqrt(0.8);
  Eigen::MatrixXd X(rows, n);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t b = 0; b < 10; ++b) {
      const double zb = rng.normal();
      for (std::size_t j = 0; j < block; ++j) {
        X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b * block + j)) =
            shared * zb + own * rng.normal();
      }
    }
  }

  Eigen::Map<const Eigen::VectorXd> w_map(w.data(),
                                          static_cast<Eigen::Index>(n));
  Eigen::VectorXd y = X * w_map;
  for (std::size_t r = 0; r < rows; ++r) {
    y(static_cast<Eigen::Index>(r)) += 4.0 * rng.normal();
  }

  std::vector<std::size_t> groups(10, block);
  GroupedVector true_w(w, groups);
  const Norms nm = norms(true_w);

  SyntheticRegression out;
  out.problem.X = std::move(X);
  out.problem.y = std::move(y);
  out.problem.groups = groups;
  out.problem.spec.q = q;
  out.problem.spec.tau1 = q == Q::Two ? nm.l12 : nm.linf_group_sum;
  out.problem.spec.tau2 = nm.l1;
  out.true_w = std::move(true_w);
  return out;
}

}  // namespace normball
