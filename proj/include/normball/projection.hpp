#pragma once

#include "normball/composite_l1_l12.hpp"
#include "normball/composite_l1_l1inf.hpp"

namespace normball {

// Dispatch on spec.q.
inline ProjectionResult project_intersection(const GroupedVector& c,
                                             const BallSpec& spec,
                                             const ToleranceConfig& tol = {}) {
  return spec.q == Q::Two ? project_l1_plus_l12(c, spec, tol)
                          : project_l1_plus_l1inf(c, spec, tol);
}

}  // namespace normball
