#pragma once

#include <optional>

#include "normball/ball.hpp"
#include "normball/grouped_vector.hpp"
#include "normball/single_ball.hpp"

namespace normball {

struct RegionCheck {
  Region region = Region::Inside;
  // Single-ball results computed while testing the cases, reusable by the
  // caller: l1_ball for RegionI, l1q_ball (q=2) or linf_ball (q=inf) for
  // RegionII.
  std::optional<SingleBallResult> l1_ball;
  std::optional<SingleBallResult> l1q_ball;
  std::optional<LinfBallResult> linf_ball;
};

// Case analysis on a nonnegative (pre-reflected) vector, tested in order:
// Inside (both norms feasible), RegionII (the l1,q-ball projection already
// satisfies the l1 constraint), RegionI (the l1-ball projection already
// satisfies the l1,q constraint), otherwise RegionIII.
RegionCheck classify_region(const GroupedVector& c_nonneg,
                            const BallSpec& spec);

struct Lambda1Result {
  double lambda1 = 0.0;
  bool found = false;
};

// Evaluates the implicit function lambda1(lambda2) for q = 2 on a
// nonnegative vector: shrink every coordinate by lambda2, sort the group l2
// norms ascending and enumerate suffix active sets until the candidate
// lambda1 = (sum_{active} r_i - tau1)/|active| lands in its validity window.
// found = false means no positive consistent lambda1 exists (lambda2 is too
// large); that is a value, not an error.
Lambda1Result find_lambda1(const GroupedVector& c_nonneg, double lambda2,
                           double tau1);

struct FValue {
  double f = 0.0;
  double lambda1 = 0.0;
  bool found = false;
};

// Root function for the q = 2 bisection:
//   f(lambda2) = sum_{i active} (1 - lambda1/r_i) * t_i - tau2
// where r_i is the shrunken group l2 norm and t_i the shrunken group l1
// mass. Equals ||x(lambda2)||_1 - tau2 for the reconstructed iterate, so
// |f| bounds the l1 feasibility violation directly.
FValue eval_f(const GroupedVector& c_nonneg, double lambda2, double tau1,
              double tau2);

// Exact projection onto { ||x||_{1,2} <= tau1 } intersect { ||x||_1 <= tau2 }.
// Reflects signs, classifies the region, and in RegionIII bisects lambda2
// over [0, max|c|] on f, reconstructing x from the final dual pair.
ProjectionResult project_l1_plus_l12(const GroupedVector& c,
                                     const BallSpec& spec,
                                     const ToleranceConfig& tol = {});

}  // namespace normball
