#include "normball/composite_l1_l12.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "normball/errors.hpp"

namespace normball {

const char* to_string(Region r) {
  switch (r) {
    case Region::Inside: return "INSIDE";
    case Region::RegionI: return "REGION_I";
    case Region::RegionII: return "REGION_II";
    case Region::RegionIII: return "REGION_III";
    case Region::Origin: return "ORIGIN";
  }
  return "UNKNOWN";
}

namespace {

// Shrunken group l2 norms r_i = ||max(c_i - lambda2, 0)||_2 and, when
// needed, the shrunken group l1 masses t_i.
void shrunken_group_norms(const GroupedVector& c, double lambda2,
                          std::vector<double>& r, std::vector<double>* t) {
  const std::size_t g = c.num_groups();
  r.assign(g, 0.0);
  if (t) t->assign(g, 0.0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < g; ++i) {
    double sumsq = 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < c.group_sizes[i]; ++j) {
      const double v = c.values[pos + j] - lambda2;
      if (v > 0.0) {
        sumsq += v * v;
        sum += v;
      }
    }
    r[i] = std::sqrt(sumsq);
    if (t) (*t)[i] = sum;
    pos += c.group_sizes[i];
  }
}

// Suffix enumeration over the group norms sorted ascending: candidate
// lambda1 = (sum of the top k norms - tau1)/k is accepted when it lands in
// (r_{g-k}, r_{g-k+1}] (strict below, closed above; a norm equal to lambda1
// contributes nothing either way).
Lambda1Result lambda1_from_norms(std::vector<double> r, double tau1) {
  std::sort(r.begin(), r.end());
  const std::size_t g = r.size();
  double suffix = 0.0;
  for (std::size_t k = 1; k <= g; ++k) {
    const std::size_t idx = g - k;
    suffix += r[idx];
    const double lambda1 = (suffix - tau1) / static_cast<double>(k);
    const bool ok = idx > 0 ? (r[idx - 1] < lambda1 && lambda1 <= r[idx])
                            : (0.0 < lambda1 && lambda1 <= r[0]);
    if (ok) return {lambda1, true};
  }
  return {0.0, false};
}

double max_abs(const GroupedVector& v) {
  double m = 0.0;
  for (double x : v.values) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

Lambda1Result find_lambda1(const GroupedVector& c_nonneg, double lambda2,
                           double tau1) {
  std::vector<double> r;
  shrunken_group_norms(c_nonneg, lambda2, r, nullptr);
  return lambda1_from_norms(std::move(r), tau1);
}

FValue eval_f(const GroupedVector& c_nonneg, double lambda2, double tau1,
              double tau2) {
  std::vector<double> r, t;
  shrunken_group_norms(c_nonneg, lambda2, r, &t);
  const Lambda1Result lr = lambda1_from_norms(r, tau1);
  if (!lr.found) return {0.0, 0.0, false};

  double f = -tau2;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] > lr.lambda1) f += (1.0 - lr.lambda1 / r[i]) * t[i];
  }
  return {f, lr.lambda1, true};
}

RegionCheck classify_region(const GroupedVector& c_nonneg,
                            const BallSpec& spec) {
  const Norms nm = norms(c_nonneg);
  const double l1q = spec.q == Q::Two ? nm.l12 : nm.linf_group_sum;

  if (l1q <= spec.tau1 && nm.l1 <= spec.tau2) {
    return {Region::Inside, {}, {}, {}};
  }

  // Case 2: does the l1,q-ball projection already satisfy the l1 radius?
  if (spec.q == Q::Two) {
    SingleBallResult p = project_l12(c_nonneg, spec.tau1);
    if (norms(p.x).l1 <= spec.tau2) {
      RegionCheck rc{Region::RegionII, {}, {}, {}};
      rc.l1q_ball = std::move(p);
      return rc;
    }
  } else {
    LinfBallResult p = project_l1inf(c_nonneg, spec.tau1);
    if (norms(p.x).l1 <= spec.tau2) {
      RegionCheck rc{Region::RegionII, {}, {}, {}};
      rc.linf_ball = std::move(p);
      return rc;
    }
  }

  // Case 3: does the l1-ball projection already satisfy the l1,q radius?
  SingleBallResult p1 = project_l1(c_nonneg, spec.tau2);
  const Norms pn = norms(p1.x);
  if ((spec.q == Q::Two ? pn.l12 : pn.linf_group_sum) <= spec.tau1) {
    RegionCheck rc{Region::RegionI, {}, {}, {}};
    rc.l1_ball = std::move(p1);
    return rc;
  }

  return {Region::RegionIII, {}, {}, {}};
}

namespace {

GroupedVector zero_like(const GroupedVector& c) {
  GroupedVector out = c;
  std::fill(out.values.begin(), out.values.end(), 0.0);
  return out;
}

// x_k = SGN(max(c_k - lambda2, 0)) * max(r_k - lambda1, 0), per group.
GroupedVector reconstruct_l12(const GroupedVector& c_nonneg, double lambda1,
                              double lambda2) {
  GroupedVector x = c_nonneg;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < c_nonneg.num_groups(); ++i) {
    const std::size_t s = c_nonneg.group_sizes[i];
    double sumsq = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      const double v = c_nonneg.values[pos + j] - lambda2;
      x.values[pos + j] = v > 0.0 ? v : 0.0;
      sumsq += x.values[pos + j] * x.values[pos + j];
    }
    const double r = std::sqrt(sumsq);
    const double scale = r > lambda1 ? (r - lambda1) / r : 0.0;
    for (std::size_t j = 0; j < s; ++j) x.values[pos + j] *= scale;
    pos += s;
  }
  return x;
}

}  // namespace

ProjectionResult project_l1_plus_l12(const GroupedVector& c,
                                     const BallSpec& spec,
                                     const ToleranceConfig& tol) {
  if (spec.q != Q::Two) {
    throw std::invalid_argument("project_l1_plus_l12 requires q = 2");
  }
  if (spec.tau1 < 0.0 || spec.tau2 < 0.0) {
    throw invalid_radius_error("ball radii must be nonnegative");
  }
  if (spec.tau1 == 0.0 || spec.tau2 == 0.0) {
    return {zero_like(c), {0.0, 0.0}, Region::Origin, 0, 0.0, {}};
  }

  auto [a, mask] = reflect_to_positive(c);
  const double max_c = max_abs(a);
  if (max_c == 0.0) return {c, {0.0, 0.0}, Region::Inside, 0, 0.0, {}};

  RegionCheck rc = classify_region(a, spec);
  switch (rc.region) {
    case Region::Inside:
      return {c, {0.0, 0.0}, Region::Inside, 0, 0.0, {}};
    case Region::RegionII:
      return {restore_signs(rc.l1q_ball->x, mask),
              {rc.l1q_ball->threshold, 0.0},
              Region::RegionII,
              0,
              0.0,
              {}};
    case Region::RegionI:
      return {restore_signs(rc.l1_ball->x, mask),
              {0.0, rc.l1_ball->threshold},
              Region::RegionI,
              0,
              0.0,
              {}};
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
  double best_absf = std::numeric_limits<double>::infinity();
  bool have_best = false;

  while (true) {
    if (iterations >= tol.max_bisection_iters) {
      throw nonconvergence_error("lambda2 bisection exceeded iteration cap");
    }
    const double mid = 0.5 * (left + right);
    ++iterations;
    const FValue fv = eval_f(a, mid, spec.tau1, spec.tau2);
    if (fv.found) {
      const double absf = std::abs(fv.f);
      if (absf < best_absf) {
        best_absf = absf;
        best_lambda1 = fv.lambda1;
        best_lambda2 = mid;
        have_best = true;
      }
      if (absf <= eps_residual) break;
      if (fv.f < 0.0) {
        right = mid;
      } else {
        left = mid;
      }
    } else {
      // No positive lambda1 is consistent at this lambda2: the shrunken
      // vector already fits the l1,2 ball, so the root lies below.
      right = mid;
    }
    if (right - left <= eps_interval) break;
  }

  if (!have_best) {
    throw nonconvergence_error(
        "lambda2 bisection terminated without a usable dual pair");
  }

  GroupedVector x = reconstruct_l12(a, best_lambda1, best_lambda2);
  return {restore_signs(x, mask),
          {best_lambda1, best_lambda2},
          Region::RegionIII,
          iterations,
          best_absf,
          {}};
}

}  // namespace normball
