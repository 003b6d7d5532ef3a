#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "normball/ball.hpp"
#include "normball/grouped_vector.hpp"

namespace normball {

// Least squares min 0.5 ||y - X w||^2 subject to w in the composite ball.
struct RegressionProblem {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  BallSpec spec;
  std::vector<std::size_t> groups;  // group sizes for w
};

struct SolveTrace {
  std::vector<double> objective;  // objective[0] is the start, one per step
  long iterations = 0;
  GroupedVector final_w;
  double step_size_used = 0.0;
  bool converged = false;
  // Worst constraint violation seen over all iterates (projection applied
  // at every step, so these stay at roundoff level).
  double max_violation_l1q = 0.0;
  double max_violation_l1 = 0.0;
};

// Projected gradient with a fixed step 0.95 / L, where L is a 50-iteration
// power-iteration estimate of the largest eigenvalue of X^T X. Stops when
// the step norm ||w_{k+1} - w_k|| falls below tol.
SolveTrace pg_solve(const RegressionProblem& p, double tol, long max_iters);

// Accelerated projected gradient (FISTA-style momentum extrapolation) with
// the same step rule and stopping test.
SolveTrace nesterov_solve(const RegressionProblem& p, double tol,
                          long max_iters);

enum class ProblemSize { Small, Medium };

struct SyntheticRegression {
  RegressionProblem problem;
  GroupedVector true_w;
};

// Synthetic sparse-group regression data. Small: w in R^100 split into ten
// blocks of ten whose first six blocks carry 10, 8, 6, 4, 2, 1 nonzeros
// (random +-1), N = 200 rows; Medium: the x10 analog (blocks of 100,
// nonzeros 100..10, N = 4000). Rows are zero-mean Gaussian with correlation
// 0.2 inside a group (one shared factor: sqrt(0.2) z_group + sqrt(0.8) z_own)
// and independent across groups; y = X w + eps with eps ~ N(0, 4.0^2).
// Radii are set from the generated coefficients: tau1 = ||w||_{1,q},
// tau2 = ||w||_1. Identical seeds reproduce the problem bit for bit.
SyntheticRegression generate_synthetic_regression(ProblemSize size, Q q,
                                                  std::uint64_t seed);

}  // namespace normball
