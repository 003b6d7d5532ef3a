#include "normball/composite_l1_l1inf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normball/composite_l1_l12.hpp"
#include "normball/errors.hpp"
#include "normball/single_ball.hpp"

namespace normball {

namespace {

GroupedVector shrink(const GroupedVector& c_nonneg, double lambda2) {
  GroupedVector out = c_nonneg;
  for (double& v : out.values) v = std::max(v - lambda2, 0.0);
  return out;
}

GroupedVector zero_like(const GroupedVector& c) {
  GroupedVector out = c;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  return out;
}

std::vector<double> group_maxima(const GroupedVector& v) {
  std::vector<double> caps(v.num_groups(), 0.0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < v.num_groups(); ++i) {
    for (std::size_t j = 0; j < v.group_sizes[i]; ++j) {
      caps[i] = std::max(caps[i], std::abs(v.values[pos + j]));
    }
    pos += v.group_sizes[i];
  }
  return caps;
}

double max_abs(const GroupedVector& v) {
  double m = 0.0;
  for (double x : v.values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

HValue eval_h(const GroupedVector& c_nonneg, double lambda2, double tau1,
              double tau2) {
  const LinfBallResult inner = project_l1inf(shrink(c_nonneg, lambda2), tau1);
  double h = -tau2;
  for (double v : inner.x.values) h += v;
  return {h, inner.caps, inner.lambda1};
}

ProjectionResult project_l1_plus_l1inf(const GroupedVector& c,
                                       const BallSpec& spec,
                                       const ToleranceConfig& tol) {
  if (spec.q != Q::Inf) {
    throw std::invalid_argument("project_l1_plus_l1inf requires q = inf");
  }
  if (spec.tau1 < 0.0 || spec.tau2 < 0.0) {
    throw invalid_radius_error("ball radii must be nonnegative");
  }
  if (spec.tau1 == 0.0 || spec.tau2 == 0.0) {
    GroupedVector zero = zero_like(c);
    std::vector<double> caps(c.num_groups(), 0.0);
    return {std::move(zero), {0.0, 0.0}, Region::Origin, 0, 0.0,
            std::move(caps)};
  }

  auto [a, mask] = reflect_to_positive(c);
  const double max_c = max_abs(a);
  if (max_c == 0.0) {
    return {c, {0.0, 0.0}, Region::Inside, 0, 0.0, group_maxima(a)};
  }

  RegionCheck rc = classify_region(a, spec);
  switch (rc.region) {
    case Region::Inside:
      return {c, {0.0, 0.0}, Region::Inside, 0, 0.0, group_maxima(a)};
    case Region::RegionII:
      return {restore_signs(rc.linf_ball->x, mask),
              {rc.linf_ball->lambda1, 0.0},
              Region::RegionII,
              0,
              0.0,
              rc.linf_ball->caps};
    case Region::RegionI:
      return {restore_signs(rc.l1_ball->x, mask),
              {0.0, rc.l1_ball->threshold},
              Region::RegionI,
              0,
              0.0,
              group_maxima(rc.l1_ball->x)};
    default:
      break;
  }

  const double eps_interval =
      tol.eps_interval > 0.0 ? tol.eps_interval : 1e-10 * std::max(1.0, max_c);
  const double eps_residual = tol.eps_residual > 0.0
                                  ? tol.eps_residual
                                  : 1e-9 * std::max(1.0, spec.tau2);

  double left = 0.0;
  double right = max_c;
  int iterations = 0;
  double best_lambda1 = 0.0;
  double best_lambda2 = 0.0;
  std::vector<double> best_caps;
  double best_absh = std::numeric_limits<double>::infinity();

  while (true) {
    if (iterations >= tol.max_bisection_iters) {
      throw nonconvergence_error("lambda2 bisection exceeded iteration cap");
    }
    const double mid = 0.5 * (left + right);
    ++iterations;
    HValue hv = eval_h(a, mid, spec.tau1, spec.tau2);
    const double absh = std::abs(hv.h);
    if (absh < best_absh) {
      best_absh = absh;
      best_lambda1 = hv.lambda1;
      best_lambda2 = mid;
      best_caps = std::move(hv.caps);
    }
    if (absh <= eps_residual) break;
    if (hv.h > 0.0) {
      left = mid;
    } else {
      right = mid;
    }
    if (right - left <= eps_interval) break;
  }

  GroupedVector x = a;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < a.num_groups(); ++i) {
    for (std::size_t j = 0; j < a.group_sizes[i]; ++j) {
      const double v = std::max(a.values[pos + j] - best_lambda2, 0.0);
      x.values[pos + j] = std::min(v, best_caps[i]);
    }
    pos += a.group_sizes[i];
  }

  return {restore_signs(x, mask),
          {best_lambda1, best_lambda2},
          Region::RegionIII,
          iterations,
          best_absh,
          std::move(best_caps)};
}

}  // namespace normball
