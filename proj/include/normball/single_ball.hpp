#pragma once

#include <cstddef>
#include <vector>

#include "normball/grouped_vector.hpp"

namespace normball {

struct SingleBallResult {
  GroupedVector x;
  double threshold = 0.0;  // dual / soft-threshold level; 0 iff input feasible
  std::size_t active_count = 0;
};

// Projection onto { x : ||x||_1 <= tau }. Sort-then-threshold method of
// Duchi et al. (2008). Signs are handled internally; tau < 0 throws
// invalid_radius_error, tau = 0 yields the zero vector with
// threshold = max|c_i|.
SingleBallResult project_l1(const GroupedVector& c, double tau);

// Projection onto { x : ||x||_{1,2} <= tau1 } by reducing to an l1
// projection of the vector of group l2 norms and rescaling each group
// (Schmidt et al., 2009). active_count counts surviving groups.
SingleBallResult project_l12(const GroupedVector& c, double tau1);

struct LinfBallResult {
  GroupedVector x;
  std::vector<double> caps;  // per-group cap d_i; |x_ij| <= d_i, sum d = tau1
  double lambda1 = 0.0;      // common per-group overflow mass at the optimum
  std::size_t active_count = 0;  // groups with a positive cap
};

// Projection onto { x : ||x||_{1,inf} <= tau1 }. O(n log n) breakpoint sweep
// in the style of Quattoni et al. (2009): each group's cap d_i solves
// sum_j max(|c_ij| - d_i, 0) = lambda1, with sum_i d_i = tau1 when the
// constraint is active.
LinfBallResult project_l1inf(const GroupedVector& c, double tau1);

}  // namespace normball
