#pragma once

#include <vector>

#include "normball/grouped_vector.hpp"

namespace normball {

enum class Q { Two, Inf };

// Intersection constraint: ||x||_{1,q} <= tau1 and ||x||_1 <= tau2.
struct BallSpec {
  Q q = Q::Two;
  double tau1 = 0.0;
  double tau2 = 0.0;
};

// Case partition for points outside the intersection:
//   RegionI   - only the l1 constraint is active (lambda1 = 0),
//   RegionII  - only the l1,q constraint is active (lambda2 = 0),
//   RegionIII - both constraints are active.
// Origin marks the zero-radius short-circuit where the answer is x = 0 and
// no case analysis applies.
enum class Region { Inside, RegionI, RegionII, RegionIII, Origin };

const char* to_string(Region r);

struct DualPair {
  double lambda1 = 0.0;  // multiplier of the l1,q constraint
  double lambda2 = 0.0;  // multiplier of the l1 constraint
};

struct ToleranceConfig {
  // Bisection stops when the bracketing interval is narrower than
  // eps_interval or the root-function residual falls below eps_residual,
  // whichever happens first. A non-positive value selects the default:
  //   eps_interval: 1e-10 * max(1, max|c_i|)
  //   eps_residual: 1e-9  * max(1, tau2)
  double eps_interval = 0.0;
  double eps_residual = 0.0;
  int max_bisection_iters = 200;
};

struct ProjectionResult {
  GroupedVector x;
  DualPair duals;
  Region region = Region::Inside;
  int iterations = 0;     // bisection steps (0 for the trivial regions)
  double residual = 0.0;  // |f| resp. |h| at termination, 0 for trivial regions
  std::vector<double> caps;  // per-group caps d, populated for q = Inf only
};

}  // namespace normball
