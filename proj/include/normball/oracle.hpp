#pragma once

#include "normball/ball.hpp"
#include "normball/grouped_vector.hpp"

namespace normball {

// Slow reference solver #1: uniform grid scan of lambda2 over [0, max|c|],
// with lambda1 recovered per grid point from the inner solve (find_lambda1
// for q = 2, the single-ball l1,inf projection for q = inf), followed by a
// single 10x finer local refinement around the best grid point.
//
// Preconditions: grid_resolution >= 1000 and both constraints individually
// violated (a RegionIII-type instance); an instance whose root function
// never changes sign across the grid raises oracle_failure_error.
ProjectionResult oracle_dual_grid(const GroupedVector& c, const BallSpec& spec,
                                  int grid_resolution = 10000);

// Slow reference solver #2: alternating exact single-ball projections with
// Dykstra corrections driven to an internal tolerance of 1e-12. Uses only
// the single-ball operators and convex-set geometry, no dual machinery, so
// the two oracles fail independently. Throws oracle_failure_error when the
// iteration budget is exhausted.
GroupedVector oracle_projected_descent(const GroupedVector& c,
                                       const BallSpec& spec,
                                       long iters = 2000000);

}  // namespace normball
