#pragma once

#include "normball/ball.hpp"
#include "normball/grouped_vector.hpp"

namespace normball {

enum class SweepOrder { L1First, L1qFirst };

struct BaselineResult {
  GroupedVector x;
  long iterations = 0;
  bool converged = false;
  double final_change = 0.0;  // l2 distance between the last two iterates
  SweepOrder ordering = SweepOrder::L1First;  // meaningful for Dykstra only
};

// Dykstra's alternating projection scheme (Dykstra, 1983) onto the
// intersection of the l1 and l1,q balls, one correction vector per set.
// An iteration is a full sweep over both sets in the given order; the loop
// stops when the l2 distance between consecutive sweep iterates falls below
// tol. Exceeding max_iters reports converged = false, it does not throw.
BaselineResult dykstra_project(const GroupedVector& c, const BallSpec& spec,
                               SweepOrder ordering, double tol = 1e-9,
                               long max_iters = 1000000);

// Consensus-splitting ADMM with a scaled dual: the x-update projects a
// rho-weighted average onto the l1,q ball, the z-update projects x + u onto
// the l1 ball, and the loop stops when primal and dual residuals are both
// below tol.
BaselineResult admm_project(const GroupedVector& c, const BallSpec& spec,
                            double rho = 1.0, double tol = 1e-8,
                            long max_iters = 100000);

}  // namespace normball
