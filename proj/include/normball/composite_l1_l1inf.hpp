#pragma once

#include <vector>

#include "normball/ball.hpp"
#include "normball/grouped_vector.hpp"

namespace normball {

struct HValue {
  double h = 0.0;
  std::vector<double> caps;
  double lambda1 = 0.0;
};

// Root function for the q = inf bisection: shrink c by lambda2 elementwise,
// project the shrunken vector onto the l1,inf ball of radius tau1 (which
// yields the caps d(lambda2) and lambda1(lambda2)), and return
//   h(lambda2) = sum_ij min(max(c_ij - lambda2, 0), d_i) - tau2.
// Defined for any lambda2 >= 0; beyond max c it is identically -tau2.
HValue eval_h(const GroupedVector& c_nonneg, double lambda2, double tau1,
              double tau2);

// Exact projection onto { ||x||_{1,inf} <= tau1 } intersect
// { ||x||_1 <= tau2 }: sign reflection, the same case analysis as the q = 2
// path, and in RegionIII a bisection of lambda2 on h. The optimizer is
// recovered as x_ij = min(max(c_ij - lambda2, 0), d_i), signed back.
ProjectionResult project_l1_plus_l1inf(const GroupedVector& c,
                                       const BallSpec& spec,
                                       const ToleranceConfig& tol = {});

}  // namespace normball
